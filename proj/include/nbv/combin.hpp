#pragma once

#include "nbv/errors.hpp"
#include "nbv/trace.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace nbv {

Scalar factorial(int n);
// [n]_q = (q^n - q^-n)/(q - q^-1)
Scalar q_number(int n, const Scalar& q);
// Throws PreconditionError if some [r]_q, r <= n, vanishes.
Scalar q_factorial(int n, const Scalar& q);
// n! or [n]_q!
Scalar flavored_factorial(const Flavor& f, int n);

// (a - b + 1)/(a - b), or (q a - q^-1 b)/(a - b)
Scalar cross_factor(const Flavor& f, const Scalar& a, const Scalar& b);
// the factor of W for one ordered pair: (a - b - 1)/(a - b), or (a/q - q b)/(a - b)
Scalar w_pair(const Flavor& f, const Scalar& a, const Scalar& b);
Scalar w_factor(const Flavor& f, const std::vector<Scalar>& vars);

inline void accumulate(Scalar& acc, const Scalar& c, const Scalar& v) { acc = acc + c * v; }
// an empty Vec stands for zero
inline void accumulate(Vec& acc, const Scalar& c, const Vec& v)
{
    if (v.empty())
        return;
    if (acc.empty())
        acc.assign(v.size(), Scalar(0));
    axpy(acc, c, v);
}

std::string describe_permutation(const std::vector<std::vector<int>>& perm);

// Sum over S_{xi^1} x ... x S_{xi^{N-1}} of fn(sigma t) * prod_a W(sigma t^a).
// The block sizes are read off t.
template <class T, class F>
T sym_bar(const Flavor& f, const VarCollection& t, F&& fn)
{
    std::vector<std::vector<int>> perm;
    for (const auto& block : t) {
        perm.emplace_back(block.size());
        std::iota(perm.back().begin(), perm.back().end(), 0);
    }
    T acc{};
    VarCollection s = t;
    for (;;) {
        Scalar w(1);
        try {
            for (std::size_t a = 0; a < t.size(); ++a) {
                for (std::size_t i = 0; i < t[a].size(); ++i)
                    s[a][i] = t[a][static_cast<std::size_t>(perm[a][i])];
                w = w * w_factor(f, s[a]);
            }
            accumulate(acc, w, fn(static_cast<const VarCollection&>(s)));
        }
        catch (const PoleError& e) {
            throw PoleError(std::string(e.what()) + " (under permutation " + describe_permutation(perm) + ")");
        }
        std::size_t a = 0;
        while (a < perm.size() && !std::next_permutation(perm[a].begin(), perm[a].end()))
            ++a;
        if (a == perm.size())
            break;
    }
    return acc;
}

// t_(lo, hi]: variables lo^a+1 .. hi^a of every level.
VarCollection slice(const VarCollection& t, const std::vector<int>& lo, const std::vector<int>& hi);
VarCollection head(const VarCollection& t, const std::vector<int>& eta);
VarCollection drop_last_level(const VarCollection& t);
VarCollection drop_first_level(const VarCollection& t);
std::vector<int> sizes(const VarCollection& t);

// t carries exactly eta^a variables at level a. Dead variables are never read.
Scalar x_factor(const Flavor& f, const std::vector<int>& eta, const VarCollection& t);
Scalar y_factor(const Flavor& f, const std::vector<int>& eta, const VarCollection& t);
// t has xi^a variables at level a, s has eta^a.
Scalar z_factor(const Flavor& f, const VarCollection& t, const VarCollection& s);

// Evaluation module V(x) with its gl data; the view (offset, rank) selects the
// subalgebra generated by e_{a+offset, b+offset}.
struct EvalData {
    std::shared_ptr<const GlModule> module;
    Scalar x;
};

enum class Closed { bcN, bc1 };

// B_xi(t) v by the rank recursion. Direction::last recurses through phi,
// Direction::first through psi.
Vec recursion_theorem(const EvalData& ev, const Composition& xi, const VarCollection& t, Direction d);
Vec closed_form(const EvalData& ev, const Composition& xi, const VarCollection& t, Closed c);

struct MMatrix {
    int n = 0;
    std::map<std::pair<int, int>, int> m;  // (a, b), 1 <= b < a <= n
    int operator()(int a, int b) const;
};
std::vector<MMatrix> enumerate_m(int n, const Composition& xi, Closed c);

// Order of factors in the e-words: true when e_{a1 b1} stands left of e_{a2 b2}.
bool bcn_left_of(std::pair<int, int> x, std::pair<int, int> y);
bool bc1_left_of(std::pair<int, int> x, std::pair<int, int> y);

using FactorWeight = std::function<Vec(std::size_t factor, const Composition&, const VarCollection&)>;

enum class SymMode { full, cosets };

// B_xi(t)(v_1 (x) ... (x) v_n) from the factors. factor_bv defaults to the trace
// oracle on each factor.
Vec tensor_split(const std::vector<RepPtr>& factors, const Composition& xi, const VarCollection& t,
                 SymMode mode = SymMode::full, const FactorWeight& factor_bv = {});
// One summand of the split: chain = (0, eta_1, ..., eta_{n-1}, xi).
Vec tensor_split_term(const std::vector<RepPtr>& factors, const Composition& xi, const VarCollection& t,
                      const std::vector<std::vector<int>>& chain, SymMode mode, const FactorWeight& factor_bv = {});

// F_l(s); l[a-1] = (l^a_1 < ... < l^a_{eta^{a+1}}), s has eta^a variables at level a.
Scalar f_function(const Flavor& f, const std::vector<int>& eta, const std::vector<std::vector<int>>& l,
                  const VarCollection& s);
// G_{p,r}(y; z) by its defining symmetrization.
Scalar g_function(const Flavor& f, const std::vector<Scalar>& y, const std::vector<Scalar>& z);

// strictly increasing p-tuples in 1..r
std::vector<std::vector<int>> increasing_tuples(int p, int r);

} // namespace nbv
