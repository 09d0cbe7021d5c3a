#include "mlv/cli.hpp"
#include "mlv/parse.hpp"

#include <doctest.h>

#include <sstream>

using namespace mlv;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("eval")
{
    CHECK(run({"eval", "--valuation", "vs", "--poly", "x"}).out == "{\"value\":\"-1/2\"}\n");
    CHECK(run({"eval", "--valuation", "rho:0,0", "--poly", "x"}).out == "{\"value\":\"-1/2\"}\n");
    Run r = run({"eval", "--valuation", "mu:1", "--poly", "x^2 + x + t^(-1)"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "{\"value\":\"3/4\"}\n");
    CHECK(run({"--format", "text", "eval", "--valuation", "vs", "--poly", "x"}).out == "value: -1/2\n");
    CHECK(run({"eval", "--valuation", "vs", "--poly", "x", "--p", "3"}).out == "{\"value\":\"-1/3\"}\n");
}

TEST_CASE("uncertified results exit with 3")
{
    Run r = run({"--max-precision", "1", "eval", "--valuation", "vs", "--poly",
                 "x^4 + (1 + t^(1))*x^2 + (t^(1) + t^(2) + t^(3))*x + (t^(-2) + 1 + t^(3))"});
    CHECK(r.code == kExitUncertified);
    CHECK(r.out == "{\"at_least\":\"23/8\"}\n");
}

TEST_CASE("usage and parse errors exit with 2")
{
    CHECK(run({"eval", "--valuation", "vs", "--poly", "x^2 + + x"}).code == kExitUsage);
    CHECK(run({"eval", "--valuation", "bogus", "--poly", "x"}).code == kExitUsage);
    CHECK(run({"eval", "--valuation", "rho:1,2", "--poly", "x"}).code == kExitUsage);
    CHECK(run({"verify", "--suite", "nope"}).code == kExitUsage);
    CHECK(run({"--p", "4", "phi", "--n", "1"}).code == kExitUsage);
    CHECK(run({"--format", "xml", "phi", "--n", "1"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    Run r = run({"frobnicate"});
    CHECK(r.code == kExitUsage);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("chain output round-trips")
{
    Run r = run({"chain", "--levels", "2"});
    REQUIRE(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    ChainRecord rec = chain_from_json(j);
    CHECK(chain_to_json(rec) == j);
    auto ctx = TowerContext::create(2);
    CHECK(rec == build_chain_record(*ctx, 2, Caps{}));
    REQUIRE(rec.nodes.size() == 3);
    CHECK(rec.nodes[1].phi == "x^2 + x + t^(-1)");
    CHECK(*rec.nodes[1].gamma == Rat(3, 4));
    CHECK(*rec.nodes[2].gamma == Rat(23, 8));
    CHECK(parse_poly(rec.nodes[2].phi, ctx->field()) == ctx->phi(2));
    CHECK(rec.valid);

    auto zero = nlohmann::json::parse(run({"chain", "--levels", "0"}).out);
    CHECK(zero["nodes"].size() == 1);
    CHECK(zero["nodes"][0]["kind"] == "depth-zero");
}

TEST_CASE("verify reports are deterministic")
{
    Run a = run({"verify", "--suite", "vivs", "--levels", "2"});
    CHECK(a.code == kExitOk);
    std::vector<std::string> args{"--samples", "4", "verify", "--suite", "all", "--levels", "1", "--p", "2", "--seed", "7"};
    Run b = run(args), c = run(args);
    CHECK(b.code == kExitOk);
    CHECK(b.out == c.out);
    CHECK(run({"verify", "--suite", "mlv", "--levels", "2"}).code == kExitOk);
    CHECK(run({"verify", "--suite", "mlv", "--levels", "2", "--corrupt-gamma", "1/2"}).code == kExitFail);
}

TEST_CASE("phi")
{
    Run r = run({"phi", "--n", "2"});
    CHECK(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["psi"] == "x^4 + (1 + t^(1))*x^2 + (t^(1) + t^(2) + t^(3))*x");
    CHECK(j["degree"] == 4);
}
