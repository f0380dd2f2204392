#pragma once

#include "nbv/module.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace nbv {

// N x N grid of operators, row-major, 1-based accessors.
class OpGrid {
public:
    OpGrid(int n, std::vector<Operator> ops) : n_(n), ops_(std::move(ops)) {}
    const Operator& operator()(int a, int b) const { return ops_[static_cast<std::size_t>((a - 1) * n_ + (b - 1))]; }
    int rank() const { return n_; }

private:
    int n_;
    std::vector<Operator> ops_;
};

enum class Sign { plus, minus };

// A module over Y(gl_N) (rational) or U_q(gl~_N) (trig) with a distinguished
// weight singular vector. T(a,b,u) is T_ab(u) in the rational case and
// L^-_ab(u) in the trigonometric case.
class Rep {
public:
    virtual ~Rep() = default;

    virtual int rank() const = 0;
    virtual const Flavor& flavor() const = 0;
    virtual std::vector<Space> legs() const = 0;
    std::size_t dim() const { return total_dim(legs()); }

    virtual OpGrid series(Sign s, const Scalar& u) const = 0;
    OpGrid T(const Scalar& u) const { return series(Sign::minus, u); }
    Operator T(int a, int b, const Scalar& u) const { return T(u)(a, b); }

    virtual Vec singular() const = 0;
    virtual std::vector<std::string> basis_labels() const = 0;
    // gl weight of each basis vector (length = rank()).
    virtual std::vector<std::vector<int>> basis_weights() const = 0;
    virtual std::vector<int> highest_weight() const = 0;

    // Total gl_N action (rational: e_ab; trig: hat e_ab for a != b).
    virtual Operator gl_e(int a, int b) const = 0;
    // Trig only: hat k_a^{power}.
    virtual Operator gl_k(int a, int power) const = 0;
    // Throws PoleError naming `what` when u hits a pole of the series.
    virtual void check_point(const Scalar& u, const std::string& what) const = 0;
    // Evaluation points of the factors, in order (for diagnostics / preflight).
    virtual std::vector<Scalar> eval_points() const = 0;
    virtual std::string describe() const = 0;

    // <T_aa(u) v> read off the singular vector.
    Scalar eigenvalue(int a, const Scalar& u) const;
};

using RepPtr = std::shared_ptr<const Rep>;

// V(x): a gl module pulled back along the evaluation map and rho_x.
RepPtr make_eval(std::shared_ptr<const GlModule> m, const Scalar& x);
// Tensor product via the coproduct T_ab -> sum_c T_cb (x) T_ac.
RepPtr make_tensor(RepPtr left, RepPtr right);
RepPtr make_assembly(const std::vector<RepPtr>& factors);
// Rank-r view: T^{<r>}_ab -> T_{a+offset, b+offset}. phi: offset 0, psi: offset 1.
RepPtr make_view(RepPtr inner, int offset, int rank);
RepPtr pullback_phi(RepPtr inner);
RepPtr pullback_psi(RepPtr inner);
// L(x): T(u) -> (u-x)^{-1} R(u-x) on C^n, singular vector w_1.
RepPtr make_L(int n, const Scalar& x);
// Lbar(x): T_ab(u) -> delta_ab - E_ab/(u-x) on C^n, singular vector w_n.
RepPtr make_Lbar(int n, const Scalar& x);

// T(u) = sum E_ab (x) T_ab(u) on C^N (x) V.
Operator monodromy(const Rep& rep, Sign s, const Scalar& u);

} // namespace nbv
