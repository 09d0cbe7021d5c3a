#pragma once

#include "mlv/eval.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mlv {

/// Stable value of a polynomial under a continuous family, with the first
/// family index at which the value is attained.
struct StabilityResult {
    Rat value;
    int witness = 0;
};

/// A totally ordered family of valuations rho_i indexed by integers i, read
/// in increasing order via first_index/next_index.
class FamilyHandle {
public:
    virtual ~FamilyHandle() = default;
    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual std::size_t stable_degree() const = 0;
    [[nodiscard]] virtual int first_index() const = 0;
    [[nodiscard]] virtual int next_index(int i) const = 0;
    [[nodiscard]] virtual CertifiedVal value_at(int i, const Poly& f, const Caps& caps) const = 0;
    /// Throws std::runtime_error when no witness exists within caps.index_budget.
    [[nodiscard]] virtual StabilityResult stability(const Poly& f, const Caps& caps) const = 0;
};

using FamilyPtr = std::shared_ptr<const FamilyHandle>;

class Valuation;
using ValuationPtr = std::shared_ptr<const Valuation>;

/// omega_{a, delta}: min_k v(f_k(a)) + k delta over the (x - a)-expansion.
struct DepthZero {
    StreamPtr center;
    Rat delta;
};
/// [mu; phi, gamma]
struct Ordinary {
    ValuationPtr base;
    Poly phi;
    Rat gamma;
};
/// [C; phi, gamma]
struct LimitAug {
    FamilyPtr family;
    Poly phi;
    Rat gamma;
};
/// f -> v(f(s)) for the series of the stream.
struct Oracle {
    StreamPtr stream;
};

class Valuation {
public:
    using Variant = std::variant<DepthZero, Ordinary, LimitAug, Oracle>;

    static ValuationPtr depth_zero(StreamPtr center, Rat delta);
    /// Throws std::invalid_argument unless base(phi) < gamma is certified.
    static ValuationPtr ordinary(ValuationPtr base, Poly phi, Rat gamma, const Caps& caps);
    /// Throws std::invalid_argument unless the family values of phi at the
    /// first `samples` indices are all certified below gamma.
    static ValuationPtr limit(FamilyPtr family, Poly phi, Rat gamma, const Caps& caps, int samples = 3);
    static ValuationPtr oracle(StreamPtr stream);

    [[nodiscard]] const Variant& data() const noexcept { return v_; }
    [[nodiscard]] CertifiedVal value(const Poly& f, const Caps& caps) const;
    /// Degree of the valuation: 1 for depth-zero and oracle nodes, deg phi otherwise.
    [[nodiscard]] std::size_t degree() const;
    [[nodiscard]] std::string describe() const;

    explicit Valuation(Variant v) : v_(std::move(v)) {}

private:
    Variant v_;
};

CertifiedVal depth_zero_value(const SeriesStream& center, const Rat& delta, const Poly& f, const Caps& caps);

/// omega_{a,delta} <= omega_{b,eps}: v(a - b) >= delta and eps >= delta.
/// Throws std::runtime_error when v(a - b) cannot be certified.
bool ball_leq(const SeriesStream& a, const Rat& delta, const SeriesStream& b, const Rat& eps, const Caps& caps);

CertifiedVal ordinary_aug_value(const Valuation& mu, const Poly& phi, const Rat& gamma, const Poly& f, const Caps& caps);
CertifiedVal limit_aug_value(const FamilyHandle& family, const Poly& phi, const Rat& gamma, const Poly& f, const Caps& caps);

struct MinimalitySample {
    std::string poly;
    CertifiedVal value = CertifiedVal::exact(ValOrInf::infinity());
    CertifiedVal expansion_min = CertifiedVal::exact(ValOrInf::infinity());
    enum class Status { Pass, Counterexample, Skipped } status = Status::Skipped;
};

struct MinimalityReport {
    std::vector<MinimalitySample> samples;
    [[nodiscard]] bool counterexample_found() const;
    [[nodiscard]] bool all_pass() const;
};

/// Checks mu(f) = min_n mu(a_n g^n) over g-expansions of each sample. A
/// counterexample certifies that g is not mu-minimal.
MinimalityReport is_minimal_witness(const Valuation& mu, const Poly& g, const std::vector<Poly>& samples, const Caps& caps);

/// mu(f) < nu(f), i.e. f is mu-divisible by the tangent direction of nu.
/// Throws std::runtime_error when either value is uncertified.
bool divisibility_probe(const Valuation& mu, const Valuation& nu, const Poly& f, const Caps& caps);

struct ChainStep {
    enum class Kind { Ordinary, Limit };
    Kind kind = Kind::Limit;
    Poly phi;
    Rat gamma;
    std::size_t degree = 1;
};

struct MLVChain {
    std::vector<ChainStep> steps;
};

struct ChainCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct ChainReport {
    std::vector<ChainCheck> checks;
    [[nodiscard]] bool ok() const;
};

/// Validates degree monotonicity and the MLV condition
/// mu_k(phi_k) = mu_{k+1}(phi_k); valuations = (mu_0, ..., mu_N) for N steps.
/// With an oracle, also checks gamma_k = oracle(phi_k) and closes the last step
/// against it.
ChainReport chain_validate(const MLVChain& chain, const std::vector<ValuationPtr>& valuations, const Caps& caps,
                           const Valuation* oracle = nullptr);

std::string kind_name(ChainStep::Kind k);

} // namespace mlv
