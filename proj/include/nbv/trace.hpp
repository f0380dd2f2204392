#pragma once

#include "nbv/rep.hpp"

#include <string>
#include <utility>
#include <vector>

namespace nbv {

// xi = (xi^1, ..., xi^{N-1}); levels are 1-based in the accessors.
struct Composition {
    std::vector<int> xi;

    int levels() const { return static_cast<int>(xi.size()); }
    int operator[](int a) const { return xi[static_cast<std::size_t>(a - 1)]; }
    // xi^{<a}
    int prefix(int a) const;
    int total() const;
};

// t[a-1][i-1] = t^a_i
using VarCollection = std::vector<std::vector<Scalar>>;

void check_shape(const Composition& xi, const VarCollection& t);
std::string var_name(int a, int i);

// Enumerates every denominator class used by the trace oracle and by all
// combinatorial routes: evaluation-point poles, coincident variables, and the
// normalization factors (both orders, so that S_xi swaps stay admissible).
void preflight(const Flavor& f, const Rep* rep, const Composition& xi, const VarCollection& t);

struct Monomial {
    Scalar coeff;
    // (a_p, b_p) for the p-th variable in the order t^1_1, ..., t^{N-1}_{xi^{N-1}}
    std::vector<std::pair<int, int>> ab;
};

enum class ROrder { lexicographic, reversed };

// Expansion of B-hat (normalized = false) or B (normalized = true) into
// ordered monomials in T_ab / L^-_ab.
std::vector<Monomial> trace_monomials(const Flavor& f, int n, const Composition& xi, const VarCollection& t,
                                      bool normalized, ROrder order = ROrder::lexicographic);

Scalar normalization(const Flavor& f, const Composition& xi, const VarCollection& t);

// e.g. T_{13}(t^1_1)T_{22}(t^2_1); "1" for the empty product
std::string monomial_label(const Flavor& f, const Composition& xi, const Monomial& m);

Operator hat_weight_trace(const Rep& rep, const Composition& xi, const VarCollection& t);
Operator weight_trace(const Rep& rep, const Composition& xi, const VarCollection& t);
// B(t) applied to an arbitrary vector, monomial by monomial.
Vec weight_apply(const Rep& rep, const Composition& xi, const VarCollection& t, const Vec& v,
                 ROrder order = ROrder::lexicographic);
// B(t) v on the singular vector.
Vec weight_vector(const Rep& rep, const Composition& xi, const VarCollection& t);

// Oracle for tests: materializes the auxiliary product on (C^N)^{(x)k} (x) V and
// contracts the auxiliary legs one at a time. Normalized.
Operator weight_trace_dense(const Rep& rep, const Composition& xi, const VarCollection& t,
                            ROrder order = ROrder::lexicographic);

// The product of T's times R's times E's, before the trace, in the T-first and
// the T-last (RTT-flipped) forms. Both live on (C^N)^{(x)k} (x) V.
Operator aux_product_t_first(const Rep& rep, const Composition& xi, const VarCollection& t);
Operator aux_product_t_last(const Rep& rep, const Composition& xi, const VarCollection& t);

struct WeightResult {
    Vec coordinates;
    std::vector<int> weight;  // e_aa eigenvalues (trig: exponents of q)
    std::string method;
};

// Expected weight Lambda^a - xi^a + xi^{a-1}.
std::vector<int> result_weight(const Rep& rep, const Composition& xi);
// Throws std::logic_error if v has support outside the expected weight space.
void check_weight(const Rep& rep, const Composition& xi, const Vec& v);
WeightResult apply_to_singular(const Operator& op, const Rep& rep, const Composition& xi);

enum class Direction { first, last };

// Mirrored recursion variants. last_level: the Lbar points are t^{N-1}_i
// and the prefactors are T_{a_i,N}(t^{N-1}_i) in decreasing i. first_level:
// same prefactors, Lbar points t^1_i (needs xi^1 = xi^{N-1}). literal:
// first_level points with prefactors T_{a_i+1,1}(t^{N-1}_i).
enum class MirrorReading { last_level, first_level, literal };

Operator component_recursion(const RepPtr& rep, const Composition& xi, const VarCollection& t, Direction d,
                             MirrorReading reading = MirrorReading::last_level);

} // namespace nbv
