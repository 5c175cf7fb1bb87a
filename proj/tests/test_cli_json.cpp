#include "siegel/cli.hpp"
#include "siegel/json_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace siegel;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
    std::vector<const char*> argv = {"siegel-hecke"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli((int)argv.size(), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("laurent JSON round trip") {
    SymbolRegistry reg;
    SymbolId K = reg.intern("K"), X = reg.intern("X");
    LaurentScalar s = LaurentScalar::monomial(K, 2) * LaurentScalar::monomial(X, -1) *
                          LaurentScalar::from_rational(Rational(3, 2)) +
                      LaurentScalar::from_int(5);
    Json j = laurent_to_json(s, reg);
    CHECK(laurent_from_json(j, reg) == s);
    CHECK(laurent_from_json(laurent_to_json(LaurentScalar::zero(), reg), reg).is_zero());
}

TEST_CASE("gram and sublattice JSON round trip") {
    GramLattice lat(IntMat{{2, 1}, {1, 2}});
    CHECK(gram_from_json(gram_to_json(lat)) == lat);
    for (const auto& om : enumerate_between(lat, 2, BetweenMode::WideTilde)) {
        Json j = sublattice_to_json(om);
        CHECK(sublattice_from_json(j, lat) == om);
    }
}

TEST_CASE("coefficient table JSON round trip") {
    SymbolRegistry reg;
    CoeffTable t;
    t.degree = 1;
    t.entries.emplace_back(IntMat{{2}},
                           LaurentScalar::monomial(reg.intern("K"), 1) *
                               LaurentScalar::from_rational(Rational(1, 2)));
    Json j = table_to_json(t, reg);
    CHECK(j.at("schema") == kSchemaTag);
    CoeffTable back = table_from_json(j, reg);
    CHECK(back.degree == 1);
    REQUIRE(back.entries.size() == 1);
    CHECK(back.entries[0].first == t.entries[0].first);
    CHECK(back.entries[0].second == t.entries[0].second);
    // invalid keys are rejected
    Json bad = j;
    bad["entries"][0]["gram"][0][0] = 1;
    CHECK_THROWS_AS(table_from_json(bad, reg), std::invalid_argument);
}

TEST_CASE("config defaults, file loading and env override") {
    RunConfig c = config_from_json(Json{{"budget", 5000}, {"primes", {2, 5}}, {"seed", 9}});
    CHECK(c.budget == 5000);
    CHECK(c.primes == std::vector<long>{2, 5});
    CHECK(c.seed == 9);
    CHECK_THROWS_AS(config_from_json(Json{{"budget", 0}}), std::invalid_argument);

    setenv("SIEGEL_HECKE_BUDGET", "777", 1);
    RunConfig e = load_config("");
    CHECK(e.budget == 777);
    unsetenv("SIEGEL_HECKE_BUDGET");
}

TEST_CASE("cli: cusp listing and incidence") {
    CliRun r = cli({"cusps", "list", "--N", "6", "--n", "2", "--r", "1"});
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("cusps").size() == 4);

    CliRun dot = cli({"cusps", "incidence", "--N", "6", "--n", "2", "--format", "dot"});
    CHECK(dot.code == 0);
    CHECK(dot.out.find("digraph") != std::string::npos);

    CliRun inc = cli({"cusps", "incidence", "--N", "1", "--n", "2"});
    Json ij = Json::parse(inc.out);
    CHECK(ij.at("levels").size() == 2);
    CHECK(ij.at("edges").size() == 1);

    CliRun rep = cli({"cusps", "rep", "--N", "6", "--n", "2", "--tuple", "2,3"});
    CHECK(rep.code == 0);
    Json rj = Json::parse(rep.out);
    CHECK(rj.at("symplectic") == true);
    CHECK(rj.at("rank_profile_ok") == true);
}

TEST_CASE("cli: eigenvalue commands") {
    CliRun r = cli({"eigenvalue", "tp", "--n", "2", "--r", "0", "--N", "1", "--k", "4",
                    "--p", "2"});
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("value") == "45");

    CliRun rj = cli({"eigenvalue", "tj", "--n", "2", "--r", "1", "--j", "1", "--N", "1",
                     "--k", "12", "--p", "2", "--lambdas", "0:512,1:-1048512"});
    CHECK(rj.code == 0);
    Json jj = Json::parse(rj.out);
    // chi trivial: c_{1,1} lambda_1 + c_{1,0} lambda_0 at k=12, p=2, n=2
    CHECK(jj.contains("value"));

    // missing base eigenvalue is a usage error listing the indices
    CliRun miss = cli({"eigenvalue", "tj", "--n", "2", "--r", "1", "--j", "1", "--N", "1",
                       "--k", "12", "--p", "2", "--lambdas", "1:-1048512"});
    CHECK(miss.code == 2);
    CHECK(miss.err.find("0") != std::string::npos);

    // formal output without --k
    CliRun sym = cli({"eigenvalue", "tp", "--n", "2", "--r", "1", "--N", "6", "--p", "5",
                      "--cusp", "2"});
    CHECK(sym.code == 0);
    Json js = Json::parse(sym.out);
    CHECK(!js.contains("value"));
    CHECK(js.contains("expr"));
}

TEST_CASE("cli: verify suites, exit codes and determinism") {
    CliRun ok = cli({"verify", "counts", "--p", "2", "--n", "2"});
    CHECK(ok.code == 0);
    Json j = Json::parse(ok.out);
    CHECK(j.at("pass") == true);
    CHECK(j.at("checks").size() > 0);

    CliRun again = cli({"verify", "counts", "--p", "2", "--n", "2"});
    CHECK(again.out == ok.out);  // same config, byte-identical

    CliRun tj = cli({"verify", "intertwine-tj", "--rank", "1", "--p", "2", "--j", "1",
                     "--instances", "3", "--seed", "5"});
    CHECK(tj.code == 0);
    CliRun tj2 = cli({"verify", "intertwine-tj", "--rank", "1", "--p", "2", "--j", "1",
                      "--instances", "3", "--seed", "5"});
    CHECK(tj2.out == tj.out);

    CliRun mult = cli({"verify", "multiplicity", "--N", "6", "--n", "2"});
    CHECK(mult.code == 0);
    CHECK(mult.out.find("16") != std::string::npos);

    CliRun usage = cli({"verify", "no-such-suite"});
    CHECK(usage.code == 2);

    CliRun budget = cli({"verify", "counts", "--p", "3", "--n", "3", "--budget", "5"});
    CHECK(budget.code == 3);

    CliRun serial = cli({"verify", "intertwine-tp", "--rank", "1", "--p", "2", "--serial"});
    CHECK(serial.code == 0);
}

TEST_CASE("cli: hecke table transform against the oracle path") {
    // single-entry degree-1 table {[2]: 1}; T(3) moves the support to [6]
    SymbolRegistry reg;
    CoeffTable t;
    t.degree = 1;
    t.entries.emplace_back(IntMat{{2}}, LaurentScalar::one());
    t.entries.emplace_back(IntMat{{6}}, LaurentScalar::zero());
    std::string path = "/tmp/siegel_test_table.json";
    {
        std::ofstream f(path);
        f << table_to_json(t, reg).dump();
    }
    CliRun r = cli({"hecke", "--table", path, "--op", "tp", "--p", "3"});
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("degree") == 1);
    // entry [2] -> 0, entry [6] -> X K / 3
    SymbolRegistry reg2;
    LaurentScalar at2 = laurent_from_json(j.at("entries")[0].at("value"), reg2);
    LaurentScalar at6 = laurent_from_json(j.at("entries")[1].at("value"), reg2);
    CHECK(at2.is_zero());
    LaurentScalar want = LaurentScalar::monomial(reg2.intern("X"), 1) *
                         LaurentScalar::monomial(reg2.intern("K"), 1) *
                         LaurentScalar::from_rational(Rational(1, 3));
    CHECK(at6 == want);
    std::remove(path.c_str());

    // empty table stays empty
    std::string empty_path = "/tmp/siegel_test_empty.json";
    {
        std::ofstream f(empty_path);
        CoeffTable e;
        e.degree = 1;
        f << table_to_json(e, reg).dump();
    }
    CliRun er = cli({"hecke", "--table", empty_path, "--op", "tj", "--p", "2", "--j", "0"});
    CHECK(er.code == 0);
    CHECK(Json::parse(er.out).at("entries").empty());
    std::remove(empty_path.c_str());
}

TEST_CASE("cli: help and usage errors") {
    CliRun help = cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify") != std::string::npos);
    CliRun nothing = cli({});
    CHECK(nothing.code == 2);
    CliRun badopt = cli({"cusps", "list", "--N", "6", "--n", "2"});
    CHECK(badopt.code == 2);  // --r missing
}
