#include "mlv/cli.hpp"

#include "mlv/lucas.hpp"
#include "mlv/parse.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>

namespace mlv {

namespace {

using nlohmann::json;

struct Config {
    std::uint32_t p = 2;
    std::string max_precision = "64";
    int index_budget = 16;
    int samples = 30;
    std::uint64_t seed = 0;
    std::string format = "json";
    bool timings = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Caps make_caps(const Config& cfg)
{
    if (!is_prime(cfg.p)) throw UsageError("--p must be prime");
    if (cfg.index_budget <= 0 || cfg.samples <= 0) throw UsageError("budgets must be positive");
    Caps caps;
    try {
        caps.max_precision = Rat::parse(cfg.max_precision);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad --max-precision: ") + e.what());
    }
    if (caps.max_precision <= Rat(0)) throw UsageError("--max-precision must be positive");
    caps.index_budget = cfg.index_budget;
    return caps;
}

json rat_or_null(const std::optional<Rat>& r) { return r ? json(r->str()) : json(nullptr); }

std::optional<Rat> rat_from(const json& j)
{
    if (j.is_null()) return std::nullopt;
    return Rat::parse(j.get<std::string>());
}

int cmd_eval(const Config& cfg, const std::string& spec_text, const std::string& poly_text, std::ostream& out)
{
    Caps caps = make_caps(cfg);
    auto ctx = TowerContext::create(cfg.p);
    ValuationSpec spec = parse_valuation_spec(spec_text);
    Poly f = parse_poly(poly_text, ctx->field());
    ValuationPtr mu = make_valuation(*ctx, spec);
    CertifiedVal v = mu->value(f, caps);
    const char* key = v.is_exact() ? "value" : "at_least";
    if (cfg.format == "json")
        out << json{{key, v.value().str()}}.dump() << '\n';
    else
        out << key << ": " << v.value().str() << '\n';
    return v.is_exact() ? kExitOk : kExitUncertified;
}

int cmd_chain(const Config& cfg, int levels, std::ostream& out)
{
    Caps caps = make_caps(cfg);
    if (levels < 0 || levels > 3) throw UsageError("--levels must be in [0, 3]");
    auto ctx = TowerContext::create(cfg.p);
    ChainRecord rec = build_chain_record(*ctx, levels, caps);
    if (cfg.format == "json") {
        out << chain_to_json(rec).dump(2) << '\n';
    } else {
        for (const auto& n : rec.nodes) {
            out << "mu_" << n.level << ": " << n.kind << ", degree " << n.degree;
            if (n.radius) out << ", radius " << n.radius->str();
            if (!n.phi.empty()) out << ", phi = " << n.phi << ", gamma = " << (n.gamma ? n.gamma->str() : "uncertified");
            out << '\n';
        }
        for (const auto& c : rec.checks) out << (c.ok ? "ok   " : "FAIL ") << c.name << ": " << c.detail << '\n';
    }
    bool certified = std::all_of(rec.nodes.begin(), rec.nodes.end(),
                                 [](const ChainNodeRecord& n) { return n.kind != "limit" || n.gamma.has_value(); });
    if (!certified) return kExitUncertified;
    return rec.valid ? kExitOk : kExitFail;
}

int cmd_verify(const Config& cfg, const std::string& suite, int levels, const std::string& corrupt, std::ostream& out)
{
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) throw UsageError("unknown suite '" + suite + "'");
    if (levels < 0 || levels > 3) throw UsageError("--levels must be in [0, 3]");
    VerifyConfig vc;
    vc.caps = make_caps(cfg);
    vc.levels = levels;
    vc.samples = cfg.samples;
    vc.seed = cfg.seed;
    vc.timings = cfg.timings;
    if (!corrupt.empty()) vc.corrupt_gamma = Rat::parse(corrupt);
    auto ctx = TowerContext::create(cfg.p);
    Report rep = run_suite(*ctx, suite, vc);
    if (cfg.format == "json") {
        out << report_to_json(rep).dump(2) << '\n';
    } else {
        for (const auto& c : rep)
            out << c.status << ' ' << c.suite << ' ' << c.check_id << ": expected " << c.expected << ", computed "
                << c.computed << '\n';
    }
    return all_passed(rep) ? kExitOk : kExitFail;
}

int cmd_phi(const Config& cfg, int n, std::ostream& out)
{
    make_caps(cfg);
    if (n < 1 || n > 3) throw UsageError("--n must be in [1, 3]");
    auto ctx = TowerContext::create(cfg.p);
    const Poly& phi = ctx->phi(n);
    Poly psi = ctx->psi_polynomial(n);
    if (cfg.format == "json")
        out << json{{"n", n}, {"degree", phi.degree()}, {"psi", psi.str()}, {"phi", phi.str()}}.dump(2) << '\n';
    else
        out << "Psi_" << n << "(x) = " << psi.str() << "\nphi_" << n << "(x) = " << phi.str() << '\n';
    return kExitOk;
}

} // namespace

bool operator==(const ChainRecord& a, const ChainRecord& b)
{
    if (a.p != b.p || a.levels != b.levels || a.nodes != b.nodes || a.valid != b.valid || a.checks.size() != b.checks.size())
        return false;
    for (std::size_t k = 0; k < a.checks.size(); ++k)
        if (a.checks[k].name != b.checks[k].name || a.checks[k].ok != b.checks[k].ok || a.checks[k].detail != b.checks[k].detail)
            return false;
    return true;
}

ChainRecord build_chain_record(const TowerContext& ctx, int levels, const Caps& caps)
{
    ChainRecord rec;
    rec.p = ctx.p();
    rec.levels = levels;
    rec.nodes.push_back({0, "depth-zero", 1, "", "", std::nullopt, ctx.delta(0, 0)});
    MLVChain chain;
    std::vector<ValuationPtr> nodes{ctx.mu(0)};
    bool complete = true;
    for (int n = 1; n <= levels; ++n) {
        const Poly& phi = ctx.phi(n);
        ChainNodeRecord node{n, "limit", checked_pow(ctx.p(), static_cast<unsigned>(n)), phi.str(),
                             phi.is_exact() ? "inf" : "finite", std::nullopt, std::nullopt};
        try {
            node.gamma = ctx.gamma(n, caps);
        } catch (const std::runtime_error& e) {
            rec.checks.push_back({"gamma_" + std::to_string(n) + " certified", false, e.what()});
            complete = false;
        }
        rec.nodes.push_back(node);
        if (complete) {
            chain.steps.push_back({ChainStep::Kind::Limit, phi, *node.gamma, static_cast<std::size_t>(node.degree)});
            nodes.push_back(Valuation::limit(ctx.family(n - 1), phi, *node.gamma, caps));
        }
    }
    if (complete) {
        auto vs = ctx.vs();
        ChainReport rep = chain_validate(chain, nodes, caps, vs.get());
        rec.checks.insert(rec.checks.end(), rep.checks.begin(), rep.checks.end());
    }
    rec.valid = complete && std::all_of(rec.checks.begin(), rec.checks.end(), [](const ChainCheck& c) { return c.ok; });
    return rec;
}

nlohmann::json chain_to_json(const ChainRecord& r)
{
    json nodes = json::array();
    for (const auto& n : r.nodes) {
        json j{{"level", n.level}, {"kind", n.kind}, {"degree", n.degree}};
        if (n.kind == "depth-zero") {
            j["center"] = "s_{0,0}";
            j["radius"] = rat_or_null(n.radius);
        } else {
            j["phi"] = n.phi;
            j["precision"] = n.precision;
            j["gamma"] = rat_or_null(n.gamma);
        }
        nodes.push_back(std::move(j));
    }
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    return {{"p", r.p}, {"levels", r.levels}, {"nodes", nodes}, {"validation", {{"ok", r.valid}, {"checks", checks}}}};
}

ChainRecord chain_from_json(const nlohmann::json& j)
{
    ChainRecord r;
    r.p = j.at("p").get<std::uint32_t>();
    r.levels = j.at("levels").get<int>();
    for (const auto& n : j.at("nodes")) {
        ChainNodeRecord node;
        node.level = n.at("level").get<int>();
        node.kind = n.at("kind").get<std::string>();
        node.degree = n.at("degree").get<std::int64_t>();
        if (node.kind == "depth-zero") {
            node.radius = rat_from(n.at("radius"));
        } else {
            node.phi = n.at("phi").get<std::string>();
            node.precision = n.at("precision").get<std::string>();
            node.gamma = rat_from(n.at("gamma"));
        }
        r.nodes.push_back(std::move(node));
    }
    const auto& v = j.at("validation");
    r.valid = v.at("ok").get<bool>();
    for (const auto& c : v.at("checks"))
        r.checks.push_back({c.at("name").get<std::string>(), c.at("ok").get<bool>(), c.at("detail").get<std::string>()});
    return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact MacLane-Vaquie valuations over Puiseux series in characteristic p"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--p", cfg.p, "Characteristic (prime)");
    app.add_option("--max-precision", cfg.max_precision, "Largest truncation exponent requested from a series");
    app.add_option("--index-budget", cfg.index_budget, "Largest index explored by stability searches");
    app.add_option("--samples", cfg.samples, "Random samples per verification check group");
    app.add_option("--seed", cfg.seed, "Random seed");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--timings", cfg.timings, "Record per-check wall-clock milliseconds");
    app.fallthrough();

    std::string spec, poly;
    auto* eval = app.add_subcommand("eval", "Evaluate a valuation on a polynomial");
    eval->add_option("--valuation", spec, "rho:n,i | mu:n | vs | w:<series>,<rat>")->required();
    eval->add_option("--poly", poly, "Polynomial, e.g. \"x^2 + x + t^(-1)\"")->required();

    int levels = 2;
    auto* chain = app.add_subcommand("chain", "Print and validate the chain of limit augmentations");
    chain->add_option("--levels", levels, "Number of limit steps");

    std::string suite, corrupt;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", suite, "Suite name")->required();
    verify->add_option("--levels", levels, "Largest level");
    verify->add_option("--corrupt-gamma", corrupt, "Replace gamma_1 in the mlv suite");

    int n = 1;
    auto* phi = app.add_subcommand("phi", "Print Psi_n and phi_n");
    phi->add_option("--n", n, "Level")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (eval->parsed()) return cmd_eval(cfg, spec, poly, out);
        if (chain->parsed()) return cmd_chain(cfg, levels, out);
        if (verify->parsed()) return cmd_verify(cfg, suite, levels, corrupt, out);
        return cmd_phi(cfg, n, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "uncertified: " << e.what() << '\n';
        return kExitUncertified;
    }
}

} // namespace mlv
