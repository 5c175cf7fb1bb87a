#include "siegel/json_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace siegel {

Json laurent_to_json(const LaurentScalar& s, const SymbolRegistry& reg) {
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms()) {
        Json exp = Json::object();
        for (const auto& [id, ex] : e) exp[reg.name(id)] = ex;
        terms.push_back({{"exp", exp}, {"num", rat_num(c).str()}, {"den", rat_den(c).str()}});
    }
    return Json{{"terms", terms}};
}

LaurentScalar laurent_from_json(const Json& j, SymbolRegistry& reg) {
    LaurentScalar out;
    for (const auto& term : j.at("terms")) {
        Rational c(Integer(term.at("num").get<std::string>()),
                   Integer(term.at("den").get<std::string>()));
        LaurentScalar mono = LaurentScalar::from_rational(c);
        for (const auto& [name, ex] : term.at("exp").items())
            mono *= LaurentScalar::monomial(reg.intern(name), ex.get<int>());
        out += mono;
    }
    return out;
}

Json gram_to_json(const GramLattice& lat) {
    Json rows = Json::array();
    for (int i = 0; i < lat.rank(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < lat.rank(); ++j) row.push_back((long)lat.gram().at(i, j));
        rows.push_back(row);
    }
    return Json{{"n", lat.rank()}, {"gram", rows}};
}

GramLattice gram_from_json(const Json& j) {
    int n = j.at("n").get<int>();
    IntMat g(n, n);
    const Json& rows = j.at("gram");
    if ((int)rows.size() != n) throw std::invalid_argument("gram: row count mismatch");
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) g.at(i, k) = rows[i][k].get<long>();
    return GramLattice(g);
}

Json sublattice_to_json(const Sublattice& om) {
    Json rows = Json::array();
    const IntMat& s = om.scaled_basis();
    for (int i = 0; i < s.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < s.cols(); ++j) row.push_back(s.at(i, j).str());
        rows.push_back(row);
    }
    return Json{{"p", om.p()}, {"basis_num", rows}, {"basis_den", om.p()}};
}

Sublattice sublattice_from_json(const Json& j, const GramLattice& ambient) {
    long p = j.at("p").get<long>();
    Integer den(j.at("basis_den").get<long>());
    const Json& rows = j.at("basis_num");
    int n = (int)rows.size();
    if (n != ambient.rank()) throw std::invalid_argument("sublattice: rank mismatch");
    IntMat num(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Json& cell = rows[i][k];
            num.at(i, k) = cell.is_string() ? Integer(cell.get<std::string>())
                                            : Integer(cell.get<long>());
        }
    // stored basis = num/den; internal scaled basis = p * basis
    IntMat scaled = num.scaled(Integer(p));
    if (!scaled.divisible_by(den)) throw std::invalid_argument("sublattice: p*num/den not integral");
    return Sublattice(ambient, p, scaled.divided_by(den));
}

Json table_to_json(const CoeffTable& t, const SymbolRegistry& reg) {
    Json entries = Json::array();
    for (const auto& [gram, value] : t.entries) {
        Json rows = Json::array();
        for (int i = 0; i < gram.rows(); ++i) {
            Json row = Json::array();
            for (int j = 0; j < gram.cols(); ++j) row.push_back((long)gram.at(i, j));
            rows.push_back(row);
        }
        entries.push_back({{"gram", rows}, {"value", laurent_to_json(value, reg)}});
    }
    return Json{{"schema", kSchemaTag},
                {"degree", t.degree},
                {"default_zero", t.default_zero},
                {"entries", entries}};
}

CoeffTable table_from_json(const Json& j, SymbolRegistry& reg) {
    CoeffTable t;
    t.degree = j.at("degree").get<int>();
    t.default_zero = j.value("default_zero", true);
    for (const auto& entry : j.at("entries")) {
        const Json& rows = entry.at("gram");
        int n = (int)rows.size();
        if (n != t.degree) throw std::invalid_argument("table: gram size vs degree mismatch");
        IntMat g(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) g.at(a, b) = rows[a][b].get<long>();
        if (!is_even_gram(g) || !is_positive_semidefinite(g))
            throw std::invalid_argument("table: key not an even PSD Gram matrix");
        t.entries.emplace_back(g, laurent_from_json(entry.at("value"), reg));
    }
    return t;
}

Json report_to_json(const VerifyReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json jc{{"name", c.name}, {"pass", c.pass}};
        if (!c.lhs.empty()) jc["lhs"] = c.lhs;
        if (!c.rhs.empty()) jc["rhs"] = c.rhs;
        checks.push_back(jc);
    }
    return Json{{"schema", kSchemaTag},
                {"suite", r.suite},
                {"pass", r.all_pass()},
                {"checks", checks}};
}

Json incidence_to_json(const CuspIncidence& inc) {
    Json levels = Json::array();
    for (size_t s = 0; s < inc.by_level.size(); ++s) {
        Json nodes = Json::array();
        for (const auto& c : inc.by_level[s]) nodes.push_back(c.to_string());
        levels.push_back(nodes);
    }
    Json edges = Json::array();
    for (const auto& [from, to] : inc.edges)
        edges.push_back({{"level", from.first}, {"cusp", from.second}, {"on", to}});
    return Json{{"schema", kSchemaTag}, {"levels", levels}, {"edges", edges}};
}

std::string incidence_to_dot(const CuspIncidence& inc) {
    std::ostringstream os;
    os << "digraph cusps {\n  rankdir=BT;\n";
    for (size_t s = 0; s < inc.by_level.size(); ++s)
        for (size_t i = 0; i < inc.by_level[s].size(); ++i)
            os << "  \"L" << s << "_" << i << "\" [label=\"" << s << ":"
               << inc.by_level[s][i].to_string() << "\"];\n";
    for (const auto& [from, to] : inc.edges)
        os << "  \"L" << from.first << "_" << from.second << "\" -> \"L" << from.first + 1
           << "_" << to << "\";\n";
    os << "}\n";
    return os.str();
}

RunConfig config_from_json(const Json& j) {
    RunConfig c;
    c.budget = j.value("budget", c.budget);
    if (j.contains("primes")) c.primes = j.at("primes").get<std::vector<long>>();
    c.max_rank = j.value("max_rank", c.max_rank);
    c.entry_bound = j.value("entry_bound", c.entry_bound);
    c.instances = j.value("instances", c.instances);
    c.format = j.value("format", c.format);
    c.seed = j.value("seed", c.seed);
    c.serial = j.value("serial", c.serial);
    if (c.budget == 0) throw std::invalid_argument("config: budget must be positive");
    return c;
}

Json config_to_json(const RunConfig& c) {
    return Json{{"budget", c.budget},   {"primes", c.primes},
                {"max_rank", c.max_rank}, {"entry_bound", c.entry_bound},
                {"instances", c.instances}, {"format", c.format},
                {"seed", c.seed},       {"serial", c.serial}};
}

RunConfig load_config(const std::string& path) {
    RunConfig c;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("config file not readable: " + path);
        Json j = Json::parse(in);
        c = config_from_json(j);
    }
    if (const char* env = std::getenv("SIEGEL_HECKE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) c.budget = v;
    }
    return c;
}

}  // namespace siegel
