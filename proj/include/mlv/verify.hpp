#pragma once

#include "mlv/tower.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mlv {

struct CheckResult {
    std::string suite;
    std::string check_id;
    nlohmann::json inputs;
    std::string expected;
    std::string computed;
    std::string status; // "pass", "fail" or "error"
    std::int64_t millis = 0;
};

using Report = std::vector<CheckResult>;

struct VerifyConfig {
    int levels = 2;
    int samples = 30;
    std::uint64_t seed = 0;
    Caps caps;
    /// Largest row index i used by index grids.
    int grid_max_i = 6;
    /// Largest i for the instability sequence.
    int unstable_max_i = 10;
    /// Record wall-clock time per check; off keeps reports byte-identical.
    bool timings = false;
    /// Replaces gamma_1 in the mlv suite (negative control).
    std::optional<Rat> corrupt_gamma;
};

const std::vector<std::string>& suite_names();

/// Runs one suite (or "all"); throws std::invalid_argument for unknown names.
/// Individual check failures and errors are recorded, never thrown.
Report run_suite(const TowerContext& ctx, const std::string& suite, const VerifyConfig& cfg);

bool all_passed(const Report& r);
nlohmann::json report_to_json(const Report& r);

/// Uniform integer in [lo, hi] by rejection from a 64-bit engine, identical on
/// every platform.
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

/// Series with 1-2 terms, exponents k/8 for k in [-16, 16], nonzero F_p coefficients.
PuiseuxSeries random_coefficient(const FieldTower& F, std::mt19937_64& rng);
/// Polynomial of exact degree `degree` with random coefficients; monic if requested.
Poly random_poly(const FieldTower& F, std::mt19937_64& rng, int degree, bool monic);

} // namespace mlv
