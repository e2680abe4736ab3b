#pragma once

#include "real.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

namespace majz {

enum class VerdictKind { Holds, Fails, Inconclusive };

const char* to_string(VerdictKind kind);

/// Partial sums of the k largest entries violate sum_a <= sum_b.
struct IndexWitness {
    std::size_t k;
    Real sum_a;
    Real sum_b;
};

/// The hockey-stick difference g(t) = H_b(t) - H_a(t) is negative at t.
struct ThresholdWitness {
    Real t;
    Real value;
};

/// (-1)^n f^(n)(s) is negative.
struct DerivativeWitness {
    int n;
    Real s;
    Real value;
};

/// A scalar function of s is negative at s (used by zeta positivity).
struct PointWitness {
    Real s;
    Real value;
};

struct MassWitness {
    Real mass_a;
    Real mass_b;
};

/// A structural invariant of an input is broken.
struct InvariantWitness {
    std::size_t index;
    std::string what;
};

using Witness =
    std::variant<IndexWitness, ThresholdWitness, DerivativeWitness, PointWitness, MassWitness, InvariantWitness>;

class Verdict {
public:
    static Verdict holds() { return Verdict(VerdictKind::Holds); }
    static Verdict fails(Witness w) {
        Verdict v(VerdictKind::Fails);
        v.witness_ = std::move(w);
        return v;
    }
    static Verdict inconclusive(Real gap, std::string reason) {
        Verdict v(VerdictKind::Inconclusive);
        v.gap_ = std::move(gap);
        v.reason_ = std::move(reason);
        return v;
    }

    [[nodiscard]] VerdictKind kind() const { return kind_; }
    [[nodiscard]] bool is_holds() const { return kind_ == VerdictKind::Holds; }
    [[nodiscard]] bool is_fails() const { return kind_ == VerdictKind::Fails; }
    [[nodiscard]] bool is_inconclusive() const { return kind_ == VerdictKind::Inconclusive; }
    [[nodiscard]] const std::optional<Witness>& witness() const { return witness_; }
    [[nodiscard]] const std::optional<Real>& gap() const { return gap_; }
    [[nodiscard]] const std::string& reason() const { return reason_; }

private:
    explicit Verdict(VerdictKind k) : kind_(k) {}

    VerdictKind kind_;
    std::optional<Witness> witness_;
    std::optional<Real> gap_;
    std::string reason_;
};

}  // namespace majz
