#pragma once

#include "mlv/tower.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace mlv {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position)
    {
    }
    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Sum of monomials c*t^(a/b); integers are reduced mod p.
PuiseuxSeries parse_series(std::string_view text, const FieldTower& F);
/// "x^2 + x + t^(-1)", "(1 + t^(1))*x^2", "0".
Poly parse_poly(std::string_view text, const FieldTower& F);

struct ValuationSpec {
    enum class Kind { Rho, Mu, Vs, DepthZero } kind = Kind::Vs;
    int n = 0;
    int i = 0;
    std::string center; // series text for DepthZero
    Rat delta;
};

/// "rho:n,i", "mu:n", "vs" or "w:<series>,<rat>".
ValuationSpec parse_valuation_spec(std::string_view text);
/// Throws std::invalid_argument for indices outside S and ParseError for a bad center.
ValuationPtr make_valuation(const TowerContext& ctx, const ValuationSpec& spec);

} // namespace mlv
