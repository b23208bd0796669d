#pragma once

#include <map>
#include <string>

#include "qcfa/machine.hpp"

// Concrete machines: recognizers for a^n b^n and relatives, built from
// irrational-angle rotations, a right-endmarker measurement, and a
// random-walk amplification gadget. All are one-sided: member strings
// are never rejected, non-members are rejected with probability at
// least 1 - eps(k_coins) over unbounded time.

namespace qcfa::zoo {

/// Recognizer of { a^n b^n | n >= 1 }: a one-pass shape check fused
/// with per-symbol rotations by +-sqrt(2)*pi, a basis measurement at
/// the right endmarker (non-members are caught there with probability
/// sin^2((n-m)*sqrt(2)*pi) per round), and an amplification round that
/// accepts with probability 2^-k / (|x|+1)^2.
Machine m_eq(int k_coins);

/// Recognizer of { x in {a,b}* : #a(x) = #b(x) }; m_eq without the
/// shape check. Accepts the empty string.
Machine m_count_eq(int k_coins);

enum class Orientation { AHeavy, BHeavy };

/// Recognizer of { a^(ratio*n) b^n | n >= 1 } (AHeavy) or its mirror
/// { b^(ratio*n) a^n | n >= 1 } (BHeavy): m_eq with the light-symbol
/// rotation scaled to -ratio*sqrt(2)*pi.
Machine m_eq_ratio(int ratio, Orientation orientation, int k_coins);

/// Recognizer of { a^n b1^n a^m b2^m | n,m >= 1 } over {a, b1, b2}:
/// two chained m_eq phases, the first using the a following the b1
/// block as its right endmarker, the second using the last b1 as its
/// left endmarker.
Machine m_eq_double(int k_coins);

/// One round of the amplification gadget in isolation, for input a^len
/// with len = ell-1: two random walks from the cell right of the left
/// endmarker that must both reach the right endmarker, then k coins
/// that must all come up tails. Accepts on success, rejects on any
/// failure, so P_acc = 2^-k / ell^2 exactly.
Machine amplification_round(int k_coins);

/// Named machines built from the combinators over zoo primitives:
///  "example-2": union of m_eq_ratio(1, AHeavy) and m_eq_ratio(2, AHeavy)
///  "example-3": complement of m_count_eq
///  "remark-4":  m_eq_double (catenation with overlapping alphabets,
///               realized as the bespoke machine)
std::map<std::string, Machine> example_machines(int k_coins);

}  // namespace qcfa::zoo
