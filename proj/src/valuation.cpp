#include "mlv/valuation.hpp"

#include <stdexcept>

namespace mlv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

CertifiedVal shift(const CertifiedVal& v, const Rat& by)
{
    if (v.value().is_inf()) return v;
    Rat r = v.value().value() + by;
    return v.is_exact() ? CertifiedVal::exact(r) : CertifiedVal::lower_bound(r);
}

} // namespace

ValuationPtr Valuation::depth_zero(StreamPtr center, Rat delta)
{
    if (!center) throw std::invalid_argument("depth-zero valuation without center");
    return std::make_shared<Valuation>(DepthZero{std::move(center), delta});
}

ValuationPtr Valuation::ordinary(ValuationPtr base, Poly phi, Rat gamma, const Caps& caps)
{
    if (!base) throw std::invalid_argument("ordinary augmentation without base");
    if (!phi.is_monic() || phi.degree() < 1) throw std::invalid_argument("key polynomial must be monic of degree >= 1");
    CertifiedVal b = base->value(phi, caps);
    if (!b.is_exact() || !(b.value() < ValOrInf(gamma)))
        throw std::invalid_argument("augmentation requires mu(phi) = " + b.str() + " < gamma = " + gamma.str());
    return std::make_shared<Valuation>(Ordinary{std::move(base), std::move(phi), gamma});
}

ValuationPtr Valuation::limit(FamilyPtr family, Poly phi, Rat gamma, const Caps& caps, int samples)
{
    if (!family) throw std::invalid_argument("limit augmentation without family");
    if (!phi.is_monic() || phi.degree() < 1) throw std::invalid_argument("key polynomial must be monic of degree >= 1");
    int i = family->first_index();
    for (int k = 0; k < samples; ++k, i = family->next_index(i)) {
        CertifiedVal v = family->value_at(i, phi, caps);
        if (!v.is_exact() || !(v.value() < ValOrInf(gamma)))
            throw std::invalid_argument("limit augmentation requires family values below gamma; index " + std::to_string(i) +
                                        " gives " + v.str());
    }
    return std::make_shared<Valuation>(LimitAug{std::move(family), std::move(phi), gamma});
}

ValuationPtr Valuation::oracle(StreamPtr stream)
{
    if (!stream) throw std::invalid_argument("oracle valuation without stream");
    return std::make_shared<Valuation>(Oracle{std::move(stream)});
}

CertifiedVal Valuation::value(const Poly& f, const Caps& caps) const
{
    return std::visit(overloaded{
                          [&](const DepthZero& d) { return depth_zero_value(*d.center, d.delta, f, caps); },
                          [&](const Ordinary& o) { return ordinary_aug_value(*o.base, o.phi, o.gamma, f, caps); },
                          [&](const LimitAug& l) { return limit_aug_value(*l.family, l.phi, l.gamma, f, caps); },
                          [&](const Oracle& o) { return eval_valuation_at_stream(f, *o.stream, caps); },
                      },
                      v_);
}

std::size_t Valuation::degree() const
{
    return std::visit(overloaded{
                          [](const DepthZero&) -> std::size_t { return 1; },
                          [](const Ordinary& o) { return static_cast<std::size_t>(o.phi.degree()); },
                          [](const LimitAug& l) { return static_cast<std::size_t>(l.phi.degree()); },
                          [](const Oracle&) -> std::size_t { return 1; },
                      },
                      v_);
}

std::string Valuation::describe() const
{
    return std::visit(overloaded{
                          [](const DepthZero& d) { return "w(" + d.center->describe() + ", " + d.delta.str() + ")"; },
                          [](const Ordinary& o) {
                              return "[" + o.base->describe() + "; " + o.phi.str() + ", " + o.gamma.str() + "]";
                          },
                          [](const LimitAug& l) {
                              return "[" + l.family->name() + "; " + l.phi.str() + ", " + l.gamma.str() + "]";
                          },
                          [](const Oracle& o) { return "v(" + o.stream->describe() + ")"; },
                      },
                      v_);
}

CertifiedVal depth_zero_value(const SeriesStream& center, const Rat& delta, const Poly& f, const Caps& caps)
{
    if (f.is_zero()) return CertifiedVal::exact(ValOrInf::infinity());
    CertifiedMin acc;
    auto ders = hasse_derivatives(f);
    for (std::size_t k = 0; k < ders.size(); ++k) {
        if (ders[k].is_zero()) continue;
        CertifiedVal v = eval_valuation_at_stream(ders[k], center, caps);
        if (v.is_exact() && v.value().is_inf()) continue;
        acc.add(shift(v, delta * Rat(static_cast<std::int64_t>(k))));
    }
    return acc.result();
}

bool ball_leq(const SeriesStream& a, const Rat& delta, const SeriesStream& b, const Rat& eps, const Caps& caps)
{
    CertifiedVal d = stream_difference_valuation(a, b, caps.max_terms_compare);
    bool close;
    if (d.is_exact())
        close = d.value() >= ValOrInf(delta);
    else if (d.value() >= ValOrInf(delta))
        close = true;
    else
        throw std::runtime_error("v(" + a.describe() + " - " + b.describe() + ") only certified as " + d.str());
    return close && eps >= delta;
}

CertifiedVal ordinary_aug_value(const Valuation& mu, const Poly& phi, const Rat& gamma, const Poly& f, const Caps& caps)
{
    if (f.is_zero()) return CertifiedVal::exact(ValOrInf::infinity());
    auto expansion = phi_expansion(f, phi);
    CertifiedMin acc;
    for (std::size_t n = 0; n < expansion.size(); ++n) {
        if (expansion[n].is_zero()) continue;
        acc.add(shift(mu.value(expansion[n], caps), gamma * Rat(static_cast<std::int64_t>(n))));
    }
    return acc.result();
}

CertifiedVal limit_aug_value(const FamilyHandle& family, const Poly& phi, const Rat& gamma, const Poly& f, const Caps& caps)
{
    if (f.is_zero()) return CertifiedVal::exact(ValOrInf::infinity());
    auto expansion = phi_expansion(f, phi);
    ValOrInf best = ValOrInf::infinity();
    for (std::size_t n = 0; n < expansion.size(); ++n) {
        if (expansion[n].is_zero()) continue;
        StabilityResult st = family.stability(expansion[n], caps);
        best = min(best, ValOrInf(st.value + gamma * Rat(static_cast<std::int64_t>(n))));
    }
    return CertifiedVal::exact(best);
}

bool MinimalityReport::counterexample_found() const
{
    for (const auto& s : samples)
        if (s.status == MinimalitySample::Status::Counterexample) return true;
    return false;
}

bool MinimalityReport::all_pass() const
{
    for (const auto& s : samples)
        if (s.status != MinimalitySample::Status::Pass) return false;
    return true;
}

MinimalityReport is_minimal_witness(const Valuation& mu, const Poly& g, const std::vector<Poly>& samples, const Caps& caps)
{
    if (g.degree() < 1) throw std::invalid_argument("minimality test needs deg g >= 1");
    MinimalityReport report;
    CertifiedVal mug = mu.value(g, caps);
    for (const auto& f : samples) {
        MinimalitySample s;
        s.poly = f.str();
        s.value = mu.value(f, caps);
        CertifiedMin acc;
        auto expansion = phi_expansion(f, g);
        bool certified = mug.is_exact();
        for (std::size_t n = 0; n < expansion.size() && certified; ++n) {
            if (expansion[n].is_zero()) continue;
            CertifiedVal a = mu.value(expansion[n], caps);
            if (!a.is_exact()) {
                certified = false;
                break;
            }
            acc.add(CertifiedVal::exact(a.value() + ValOrInf(mug.value().value() * Rat(static_cast<std::int64_t>(n)))));
        }
        s.expansion_min = acc.result();
        if (!certified || !s.value.is_exact())
            s.status = MinimalitySample::Status::Skipped;
        else if (s.value.value() == s.expansion_min.value())
            s.status = MinimalitySample::Status::Pass;
        else
            s.status = MinimalitySample::Status::Counterexample;
        report.samples.push_back(std::move(s));
    }
    return report;
}

bool divisibility_probe(const Valuation& mu, const Valuation& nu, const Poly& f, const Caps& caps)
{
    CertifiedVal a = mu.value(f, caps);
    CertifiedVal b = nu.value(f, caps);
    if (!a.is_exact() || !b.is_exact())
        throw std::runtime_error("divisibility probe needs exact values, got " + a.str() + " and " + b.str());
    return a.value() < b.value();
}

bool ChainReport::ok() const
{
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

std::string kind_name(ChainStep::Kind k) { return k == ChainStep::Kind::Ordinary ? "ordinary" : "limit"; }

ChainReport chain_validate(const MLVChain& chain, const std::vector<ValuationPtr>& valuations, const Caps& caps,
                           const Valuation* oracle)
{
    ChainReport rep;
    auto add = [&](std::string name, bool ok, std::string detail) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };
    const std::size_t n = chain.steps.size();
    if (valuations.size() != n + 1) {
        add("shape", false, "expected " + std::to_string(n + 1) + " valuations, got " + std::to_string(valuations.size()));
        return rep;
    }
    std::size_t prev_degree = valuations[0]->degree();
    for (std::size_t k = 0; k < n; ++k) {
        const ChainStep& st = chain.steps[k];
        const std::string tag = "step " + std::to_string(k + 1);
        const auto deg_phi = static_cast<std::size_t>(std::max(st.phi.degree(), 0));
        add(tag + " degree", st.degree == deg_phi && st.degree > prev_degree,
            kind_name(st.kind) + " step of degree " + std::to_string(st.degree) + " after degree " +
                std::to_string(prev_degree) + ", deg phi = " + std::to_string(deg_phi));
        prev_degree = st.degree;

        try {
            CertifiedVal own = valuations[k + 1]->value(st.phi, caps);
            add(tag + " value of key polynomial", own.is_exact() && own.value() == ValOrInf(st.gamma),
                "mu(phi) = " + own.str() + ", gamma = " + st.gamma.str());
            CertifiedVal before = valuations[k]->value(st.phi, caps);
            add(tag + " augmentation", before.is_exact() && before.value() < ValOrInf(st.gamma),
                "previous node gives " + before.str());
            const Valuation* after = k + 1 < n ? valuations[k + 2].get() : oracle;
            if (after) {
                CertifiedVal next = after->value(st.phi, caps);
                add(tag + " MLV condition", own.is_exact() && next.is_exact() && own.value() == next.value(),
                    "mu_k(phi_k) = " + own.str() + ", next node gives " + next.str());
            }
            if (oracle) {
                CertifiedVal ov = oracle->value(st.phi, caps);
                add(tag + " gamma is the limit value", ov.is_exact() && ov.value() == ValOrInf(st.gamma),
                    "oracle gives " + ov.str() + ", gamma = " + st.gamma.str());
            }
        } catch (const std::exception& e) {
            add(tag + " evaluation", false, e.what());
        }
    }
    return rep;
}

} // namespace mlv
