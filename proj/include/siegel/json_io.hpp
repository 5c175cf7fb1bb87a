#pragma once

#include "siegel/cusps.hpp"
#include "siegel/eisenstein.hpp"
#include "siegel/hecke.hpp"
#include "siegel/lattices.hpp"

#include <json.hpp>

#include <string>

namespace siegel {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "siegel-hecke/1";

// {"terms":[{"exp":{"K":1,"X":-1},"num":"3","den":"2"}]}; big integers as
// decimal strings.
Json laurent_to_json(const LaurentScalar& s, const SymbolRegistry& reg);
LaurentScalar laurent_from_json(const Json& j, SymbolRegistry& reg);

// {"n":2,"gram":[[2,1],[1,2]]}
Json gram_to_json(const GramLattice& lat);
GramLattice gram_from_json(const Json& j);

// {"p":2,"basis_num":[[1,0],[0,2]],"basis_den":2}, basis = num/den.
Json sublattice_to_json(const Sublattice& om);
Sublattice sublattice_from_json(const Json& j, const GramLattice& ambient);

// {"schema":...,"degree":1,"default_zero":true,"entries":[{"gram":[[2]],"value":{...}}]}
Json table_to_json(const CoeffTable& t, const SymbolRegistry& reg);
CoeffTable table_from_json(const Json& j, SymbolRegistry& reg);

Json report_to_json(const VerifyReport& r);

Json incidence_to_json(const CuspIncidence& inc);
std::string incidence_to_dot(const CuspIncidence& inc);

// Enumeration budgets, prime list, rank bounds, output format, RNG seed.
// Fixed seed + fixed config means byte-identical output.
struct RunConfig {
    std::uint64_t budget = 1000000;
    std::vector<long> primes = {2, 3};
    int max_rank = 2;
    long entry_bound = 8;
    int instances = 10;
    std::string format = "json";
    std::uint64_t seed = 0;
    bool serial = false;
};

RunConfig config_from_json(const Json& j);
Json config_to_json(const RunConfig& c);
// Reads the JSON config file when given, then applies the
// SIEGEL_HECKE_BUDGET environment override.
RunConfig load_config(const std::string& path_or_empty);

}  // namespace siegel
