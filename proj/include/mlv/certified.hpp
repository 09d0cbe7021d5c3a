#pragma once

#include "mlv/rational.hpp"

#include <string>

namespace mlv {

/// Result of a valuation computation: an exact value or a proven lower bound.
class CertifiedVal {
public:
    enum class Kind { Exact, LowerBound };

    static CertifiedVal exact(ValOrInf v) { return CertifiedVal(Kind::Exact, v); }
    static CertifiedVal lower_bound(const Rat& b) { return CertifiedVal(Kind::LowerBound, b); }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] bool is_exact() const noexcept { return kind_ == Kind::Exact; }
    /// The exact value, or the bound for LowerBound.
    [[nodiscard]] const ValOrInf& value() const noexcept { return v_; }
    /// Exact value; throws std::runtime_error for a lower bound.
    [[nodiscard]] const ValOrInf& exact_value() const;

    /// "a/b", "inf", or ">= a/b".
    [[nodiscard]] std::string str() const;

    friend bool operator==(const CertifiedVal&, const CertifiedVal&) = default;

private:
    CertifiedVal(Kind k, ValOrInf v) : kind_(k), v_(v) {}
    Kind kind_;
    ValOrInf v_;
};

/// Certified minimum of a collection of values.
///
/// Exact once some exact value is <= every other value and every lower bound;
/// otherwise a lower bound equal to the smallest value or bound seen.
class CertifiedMin {
public:
    void add(const CertifiedVal& v);
    [[nodiscard]] CertifiedVal result() const;

private:
    ValOrInf best_exact_ = ValOrInf::infinity();
    ValOrInf best_bound_ = ValOrInf::infinity();
};

} // namespace mlv
