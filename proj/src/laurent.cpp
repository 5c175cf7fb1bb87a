#include "siegel/laurent.hpp"

#include <sstream>

namespace siegel {

std::string LaurentScalar::to_string(const SymbolRegistry& reg) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool coeff_shown = (c != 1) || e.empty();
        if (coeff_shown) os << siegel::to_string(c);
        bool any = coeff_shown;
        for (const auto& [id, ex] : e) {
            if (any) os << "*";
            os << reg.name(id);
            if (ex != 1) os << "^" << ex;
            any = true;
        }
    }
    return os.str();
}

namespace {

const SymbolBinding& require_binding(const BindingMap& bindings, SymbolId id,
                                     const SymbolRegistry& reg) {
    auto it = bindings.find(id);
    if (it == bindings.end())
        throw std::invalid_argument("unbound symbol: " + reg.name(id));
    return it->second;
}

}  // namespace

std::optional<Rational> evaluate_rational(const LaurentScalar& s, const BindingMap& bindings,
                                          const SymbolRegistry& reg) {
    Rational total = 0;
    for (const auto& [e, c] : s.terms()) {
        Rational term = c;
        for (const auto& [id, ex] : e) {
            const SymbolBinding& b = require_binding(bindings, id, reg);
            Rational v;
            if (b.kind == SymbolBinding::Kind::RationalValue) {
                v = b.rat;
            } else {
                auto r = b.root.as_rational();
                if (!r) return std::nullopt;
                v = *r;
            }
            term *= rat_pow(v, ex);
        }
        total += term;
    }
    return total;
}

std::complex<double> evaluate_complex(const LaurentScalar& s, const BindingMap& bindings,
                                      const SymbolRegistry& reg) {
    std::complex<double> total = 0.0;
    for (const auto& [e, c] : s.terms()) {
        std::complex<double> term = (double)rat_num(c) / (double)rat_den(c);
        for (const auto& [id, ex] : e) {
            const SymbolBinding& b = require_binding(bindings, id, reg);
            if (b.kind == SymbolBinding::Kind::RationalValue) {
                Rational v = rat_pow(b.rat, ex);
                term *= (double)rat_num(v) / (double)rat_den(v);
            } else {
                term *= b.root.pow(ex).value();
            }
        }
        total += term;
    }
    return total;
}

}  // namespace siegel
