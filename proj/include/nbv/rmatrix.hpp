#pragma once

#include "nbv/linalg.hpp"

#include <optional>
#include <string>

namespace nbv {

enum class Case { rational, trigonometric };

std::string to_string(Case c);
Case case_from_string(const std::string& s);

// Case tag plus the deformation parameter (unused in the rational case).
struct Flavor {
    Case kind = Case::rational;
    Scalar q = Scalar(1);

    bool trig() const { return kind == Case::trigonometric; }
    static Flavor rational() { return {}; }
    static Flavor trigonometric(const Scalar& q);
};

// Rejects q in {0, 1, -1}.
void check_q(const Scalar& q);

// u + sum E_ab (x) E_ba, or the trigonometric three-sum form.
Operator r_matrix(const Flavor& f, std::size_t n, const Scalar& u);

// P R(u); normalized divides by u+1 (rational) or u q - 1/q (trig) so that
// Ř(u) Ř(-u) = 1, resp. Ř(u) Ř(1/u) = 1.
Operator r_check(const Flavor& f, std::size_t n, const Scalar& u, bool normalized = false);

} // namespace nbv
