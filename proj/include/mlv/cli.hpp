#pragma once

#include "mlv/verify.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mlv {

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitUsage = 2, kExitUncertified = 3 };

struct ChainNodeRecord {
    int level = 0;
    std::string kind;          // "depth-zero" or "limit"
    std::int64_t degree = 1;
    std::string phi;           // key polynomial; empty for the depth-zero node
    std::string precision;     // "inf" when every coefficient of phi is exact
    std::optional<Rat> gamma;  // empty when uncertified
    std::optional<Rat> radius; // depth-zero node only
    friend bool operator==(const ChainNodeRecord&, const ChainNodeRecord&) = default;
};

struct ChainRecord {
    std::uint32_t p = 2;
    int levels = 0;
    std::vector<ChainNodeRecord> nodes;
    bool valid = false;
    std::vector<ChainCheck> checks;
    friend bool operator==(const ChainRecord& a, const ChainRecord& b);
};

/// Builds the chain mu_0 -> ... -> mu_levels and validates it against v_s.
ChainRecord build_chain_record(const TowerContext& ctx, int levels, const Caps& caps);
nlohmann::json chain_to_json(const ChainRecord& r);
/// Throws nlohmann::json::exception or ParseError on malformed input.
ChainRecord chain_from_json(const nlohmann::json& j);

/// Full command line without the program name; returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mlv
