#pragma once

#include <string>
#include <vector>

#include "ccalc/series.hpp"

namespace ccalc {

/// Preset total operations.  QmodL is the total simplicial power acting mod
/// l != p (series u + u^l), QmodP the same operation in the ambient
/// characteristic (series u^p), Pmotivic the motivic total power (series
/// u + u^l for every l).
enum class OpMode { QmodL, QmodP, Pmotivic, Identity, Custom };

inline std::string op_mode_str(OpMode m) {
    switch (m) {
        case OpMode::QmodL: return "qmodl";
        case OpMode::QmodP: return "qmodp";
        case OpMode::Pmotivic: return "pmotivic";
        case OpMode::Identity: return "identity";
        default: return "custom";
    }
}

/// A ring operation given by its characteristic series phi(u).  The series
/// must vanish at 0; it is stored exactly (all presets and CLI custom
/// operations are polynomials) and materialized at whatever truncation a
/// consumer needs.
class Operation {
public:
    Operation(OpMode mode, uint32_t prime, bool char_p, std::vector<Fp> poly_coeffs,
              std::string label = "")
        : mode_(mode), prime_(prime), char_p_(char_p), coeffs_(std::move(poly_coeffs)),
          label_(label.empty() ? op_mode_str(mode) : std::move(label)) {
        if (!coeffs_.empty() && !coeffs_[0].is_zero())
            throw usage_error("operation series must be divisible by u");
        if (mode_ == OpMode::QmodP && !char_p_)
            throw usage_error("the mod-p total power needs the ambient-characteristic flag");
        if (mode_ == OpMode::QmodL && char_p_)
            throw usage_error("the mod-l total power is only defined away from the "
                              "ambient characteristic");
    }

    OpMode mode() const { return mode_; }
    uint32_t prime() const { return prime_; }
    bool char_p() const { return char_p_; }
    const std::string& label() const { return label_; }

    /// phi(u) truncated at the requested order.
    Series phi(int order) const {
        Series s(prime_, order);
        for (size_t k = 0; k < coeffs_.size() && k <= static_cast<size_t>(order); ++k)
            s.set_coeff(static_cast<int>(k), coeffs_[k]);
        return s;
    }

    /// phi(u)/u truncated at the requested order.  The divisibility is a
    /// construction invariant, so this never loses information.
    Series phi_over_u(int order) const {
        Series s(prime_, order);
        for (size_t k = 1; k < coeffs_.size() && k <= static_cast<size_t>(order) + 1; ++k)
            s.set_coeff(static_cast<int>(k) - 1, coeffs_[k]);
        return s;
    }

    int poly_degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    /// Weight behavior on twists: the total powers send weight j to l*j, the
    /// identity fixes it.  Drives the dual homology degree law.
    uint32_t weight_multiplier() const { return mode_ == OpMode::Identity ? 1 : prime_; }

private:
    OpMode mode_;
    uint32_t prime_;
    bool char_p_;
    std::vector<Fp> coeffs_; // exact polynomial coefficients of phi
    std::string label_;
};

inline Operation steenrod_total(OpMode mode, uint32_t prime) {
    if (!is_prime(prime)) throw arithmetic_error("operation prime must be prime");
    auto unit = [&](int deg) {
        std::vector<Fp> c(deg + 1, Fp(prime, 0));
        c[deg] = Fp(prime, 1);
        return c;
    };
    switch (mode) {
        case OpMode::QmodL: {
            auto c = unit(prime);
            c[1] = Fp(prime, 1);
            return Operation(mode, prime, false, std::move(c));
        }
        case OpMode::QmodP:
            return Operation(mode, prime, true, unit(prime));
        case OpMode::Pmotivic: {
            auto c = unit(prime);
            c[1] = Fp(prime, 1);
            return Operation(mode, prime, false, std::move(c));
        }
        case OpMode::Identity:
            return Operation(mode, prime, false, unit(1));
        default:
            throw usage_error("custom operations take an explicit series");
    }
}

inline Operation custom_operation(uint32_t prime, std::vector<Fp> coeffs, bool char_p = false,
                                  const std::string& label = "custom") {
    return Operation(OpMode::Custom, prime, char_p, std::move(coeffs), label);
}

} // namespace ccalc
