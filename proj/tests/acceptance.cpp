#include "mlv/parse.hpp"
#include "mlv/verify.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace mlv;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Verdict {
    bool ok = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Verdict()>& body)
{
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("error: ") + e.what()};
    }
    if (!v.ok) ++failures;
    std::cout << (v.ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " -- " << v.detail << std::endl;
}

Verdict suite_verdict(const TowerContext& ctx, const std::string& suite, const VerifyConfig& cfg)
{
    Report r = run_suite(ctx, suite, cfg);
    std::size_t passed = 0;
    std::string first_bad;
    for (const auto& c : r) {
        if (c.status == "pass")
            ++passed;
        else if (first_bad.empty())
            first_bad = "; first failure " + c.check_id + ": expected " + c.expected + ", computed " + c.computed;
    }
    return {!r.empty() && passed == r.size(),
            suite + " p=" + std::to_string(ctx.p()) + ": " + std::to_string(passed) + "/" + std::to_string(r.size()) + " checks" + first_bad};
}

VerifyConfig config(int levels, int samples)
{
    VerifyConfig cfg;
    cfg.levels = levels;
    cfg.samples = samples;
    cfg.seed = kSeed;
    return cfg;
}

// v(s_n) and delta(n, i) against the leading term and the term list of each row.
Verdict formulas(const TowerContext& ctx, int max_n, int max_i)
{
    Caps caps;
    const auto p = ctx.p();
    int checked = 0;
    for (int n = 0; n <= max_n; ++n) {
        Rat expected(-1, checked_pow(p, static_cast<unsigned>(n + 1)));
        CertifiedVal v = eval_valuation_at_stream(Poly::x(&ctx.field()), *ctx.stream_s_m(n), caps);
        if (!(v == CertifiedVal::exact(expected))) return {false, "v(s_" + std::to_string(n) + ") = " + v.str()};
        ++checked;
        auto terms = take_terms(*ctx.stream_s_m(n), static_cast<std::size_t>(max_i + 1));
        std::size_t k = 0;
        for (int i = n; i <= max_i; ++i) {
            if (!ctx.in_S(n, i)) continue;
            Rat d = Rat(n) - Rat(1, checked_pow(p, static_cast<unsigned>(i + 1)));
            if (k >= terms.size() || ctx.delta(n, i) != d || terms[k].exp + Rat(n) != d)
                return {false, "delta(" + std::to_string(n) + "," + std::to_string(i) + ") mismatch"};
            ++k;
            ++checked;
        }
    }
    return {true, std::to_string(checked) + " exact equalities (p=" + std::to_string(p) + ", n <= " + std::to_string(max_n) +
                      ", i <= " + std::to_string(max_i) + ")"};
}

} // namespace

int main()
{
    auto ctx2 = TowerContext::create(2);
    auto ctx3 = TowerContext::create(3);
    const TowerContext& T = *ctx2;
    const FieldTower& F = T.field();
    Caps caps;

    criterion(1, "v(s_n) = -1/p^(n+1) and delta(n,i) = n - 1/p^(i+1)", [&] { return formulas(T, 3, 8); });

    criterion(2, "phi_1 = x^2 + x + t^(-1) for p = 2", [&] {
        const Poly& phi1 = T.phi(1);
        Poly irr = minimal_polynomial(AlgebraicElement{T.row_head(0), PuiseuxSeries(&F)});
        bool ok = phi1.str() == "x^2 + x + t^(-1)" && phi1 == parse_poly("x^2 + x + t^(-1)", F) && irr == phi1;
        return Verdict{ok, "phi_1 = " + phi1.str() + ", Irr(s_0) = " + irr.str()};
    });

    criterion(3, "Irr(s_n)(s_n): certified lower bound > 10 and symbolic infinity, n <= 2", [&] {
        std::ostringstream d;
        bool ok = true;
        for (int n = 0; n <= 2; ++n) {
            Poly irr = minimal_polynomial(AlgebraicElement{T.row_head(n), PuiseuxSeries(&F)});
            Caps numeric = caps;
            numeric.symbolic_roots = false;
            CertifiedVal lb = eval_valuation_at_stream(irr, *T.stream_s_m(n), numeric);
            CertifiedVal sym = eval_valuation_at_stream(irr, *T.stream_s_m(n), caps);
            ok = ok && !lb.is_exact() && lb.value() > ValOrInf(Rat(10)) && sym == CertifiedVal::exact(ValOrInf::infinity());
            d << (n ? "; " : "") << "n=" << n << ": " << lb.str() << ", symbolic " << sym.str();
        }
        return Verdict{ok, d.str()};
    });

    criterion(4, "v_{n,i}(x - s_{m,j}) = min(delta(n,i), delta(m,j)), n,m <= 2, i,j <= 6", [&] {
        VerifyConfig cfg = config(2, 1);
        cfg.grid_max_i = 6;
        return suite_verdict(T, "vivs", cfg);
    });

    criterion(5, "stability: 50 monic g per level, deg g <= p^n, witness within i <= 12", [&] {
        VerifyConfig cfg = config(2, 50);
        cfg.caps.index_budget = 12;
        return suite_verdict(T, "stability", cfg);
    });

    criterion(6, "instability: rho_{n,i}(phi_{n+1}) < gamma_{n+1}, i <= 10, n <= 2; -1/2^i at n = 0", [&] {
        VerifyConfig cfg = config(3, 1);
        cfg.unstable_max_i = 10;
        return suite_verdict(T, "unstable", cfg);
    });

    criterion(7, "limit augmentation over C_n equals mu_{n+1}, 30 random f, n <= 1", [&] {
        return suite_verdict(T, "limit-equality", config(2, 30));
    });

    criterion(8, "mu_n(phi_n) = gamma_n = v_s(phi_n), n <= 2", [&] {
        std::ostringstream d;
        bool ok = true;
        for (int n = 1; n <= 2; ++n) {
            Rat g = T.gamma(n, caps);
            CertifiedVal mu = T.mu_value(n, T.phi(n), caps);
            CertifiedVal vs = T.vs_value(T.phi(n), caps);
            ok = ok && mu == CertifiedVal::exact(g) && vs == CertifiedVal::exact(g);
            d << "n=" << n << ": " << mu.str() << " = " << g.str() << " = " << vs.str() << "; ";
        }
        Verdict suite = suite_verdict(T, "mlv", config(2, 1));
        return Verdict{ok && suite.ok, d.str() + suite.detail};
    });

    criterion(9, "stable limit: mu_n(f) = v_s(f), 30 random f with deg f < p^n, n <= 3", [&] {
        return suite_verdict(T, "stable-limit", config(3, 30));
    });

    criterion(10, "gamma_1 = 3/4 by the oracle and by the depth-zero valuation at (s_{1,1}, delta(1,1))", [&] {
        CertifiedVal oracle = eval_valuation_at_stream(T.phi(1), *T.stream_s(), caps);
        CertifiedVal dz = depth_zero_value(*T.stream_s_trunc(1, 1), T.delta(1, 1), T.phi(1), caps);
        bool ok = oracle == CertifiedVal::exact(Rat(3, 4)) && dz == CertifiedVal::exact(Rat(3, 4));
        return Verdict{ok, "oracle " + oracle.str() + ", depth-zero " + dz.str()};
    });

    criterion(11, "Krasner constant of s_{n,n} is n - 1, n = 1, 2, 3", [&] {
        std::string d;
        bool ok = true;
        for (int n = 1; n <= 3; ++n) {
            Rat k = T.krasner_delta(n);
            ok = ok && k == Rat(n - 1);
            d += (n > 1 ? ", " : "") + k.str();
        }
        return Verdict{ok, d};
    });

    criterion(12, "Psi_n additive for n <= 3; Psi_2 = y^4 + (t+1)y^2 + (t^3+t^2+t)y", [&] {
        bool ok = true;
        for (int n = 1; n <= 3; ++n) {
            Poly psi = T.psi_polynomial(n);
            ok = ok && is_additive_plus_constant(psi) && psi.coeff(0).is_exact_zero() && psi == T.psi_by_product(n);
        }
        Poly psi2 = T.psi_polynomial(2);
        ok = ok && psi2.str() == "x^4 + (1 + t^(1))*x^2 + (t^(1) + t^(2) + t^(3))*x";
        return Verdict{ok, "Psi_2 = " + psi2.str() + ", product over Ker(AS^n) agrees for n <= 3"};
    });

    criterion(13, "negative controls: corrupted gamma_1 and a non-minimal pair", [&] {
        VerifyConfig cfg = config(2, 1);
        cfg.corrupt_gamma = Rat(1, 2);
        Report r = run_suite(T, "mlv", cfg);
        std::size_t failed = 0;
        for (const auto& c : r) failed += c.status != "pass";
        auto mu = Valuation::depth_zero(std::make_shared<FiniteStream>(PuiseuxSeries(&F)), Rat(-1, 2));
        Poly x = Poly::x(&F);
        Poly g = x + Poly::constant(PuiseuxSeries::monomial(F.one(), Rat(-1)));
        MinimalityReport m = is_minimal_witness(*mu, g, {x, x.pow(2)}, caps);
        bool ok = failed > 0 && m.counterexample_found();
        return Verdict{ok, std::to_string(failed) + " mlv checks fail with gamma_1 = 1/2; minimality counterexample " +
                               (m.counterexample_found() ? "found" : "missing")};
    });

    criterion(14, "p = 3 smoke: criteria 1, 4, 5 at n <= 1", [&] {
        Verdict f = formulas(*ctx3, 1, 8);
        Verdict v = suite_verdict(*ctx3, "vivs", config(1, 1));
        VerifyConfig cfg = config(1, 50);
        cfg.caps.index_budget = 12;
        Verdict s = suite_verdict(*ctx3, "stability", cfg);
        return Verdict{f.ok && v.ok && s.ok, f.detail + "; " + v.detail + "; " + s.detail};
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << std::endl;
    return failures == 0 ? 0 : 1;
}
