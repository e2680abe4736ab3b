#pragma once

#include "real.hpp"

namespace majz {

/// How values that are numerically indistinguishable from a tie are treated.
///  AsEqual: a computed difference within the band counts as an exact tie.
///  Strict:  a computed difference within the band that points the wrong way
///           makes the verdict Inconclusive.
enum class TiePolicy { AsEqual, Strict };

const char* to_string(TiePolicy policy);

enum class Resolution { Satisfied, Violated, Unresolved };

struct Tolerance {
    unsigned precision_bits = kDefaultPrecision;
    TiePolicy ties = TiePolicy::AsEqual;

    /// 2^-(p - slack_bits) * scale
    [[nodiscard]] Real band(const Real& scale, long slack_bits) const {
        return ldexp(abs(scale), -(static_cast<long>(precision_bits) - slack_bits));
    }

    /// Resolves the claim `diff >= 0` against a band of the given half-width.
    [[nodiscard]] Resolution nonnegative(const Real& diff, const Real& band) const {
        if (diff.sign() >= 0) {
            return Resolution::Satisfied;
        }
        if (-diff > band) {
            return Resolution::Violated;
        }
        return ties == TiePolicy::AsEqual ? Resolution::Satisfied : Resolution::Unresolved;
    }

    /// Resolves the claim `diff == 0`.
    [[nodiscard]] Resolution zero(const Real& diff, const Real& band) const {
        if (diff.is_zero()) {
            return Resolution::Satisfied;
        }
        if (abs(diff) > band) {
            return Resolution::Violated;
        }
        return ties == TiePolicy::AsEqual ? Resolution::Satisfied : Resolution::Unresolved;
    }
};

/// Slack used by every mass-equality comparison: |delta| <= 2^-(p-10) * max(mass).
inline constexpr long kMassSlackBits = 10;

}  // namespace majz
