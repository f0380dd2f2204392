#pragma once

#include "nbv/scalar.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace nbv {

struct Space {
    std::size_t dim = 1;
    std::string label;
};

using Vec = std::vector<Scalar>;

bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Scalar& c, const Vec& v);
Vec& axpy(Vec& y, const Scalar& c, const Vec& x);  // y += c x

// Dense operator between tensor products of spaces. Legs are listed with the
// first one most significant in the row-major index.
class Operator {
public:
    Operator() = default;
    Operator(std::vector<Space> codomain, std::vector<Space> domain);

    static Operator identity(const std::vector<Space>& legs);
    static Operator scalar(const std::vector<Space>& legs, const Scalar& c);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<Space>& codomain() const { return cod_; }
    const std::vector<Space>& domain() const { return dom_; }

    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Operator operator*(const Operator& o) const;
    Operator& operator+=(const Operator& o);
    Operator& operator-=(const Operator& o);
    Operator& operator*=(const Scalar& c);
    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator*(Operator a, const Scalar& c) { return a *= c; }
    friend Operator operator*(const Scalar& c, Operator a) { return a *= c; }

    Vec apply(const Vec& v) const;
    bool is_zero() const;
    bool same_shape(const Operator& o) const;
    friend bool operator==(const Operator& a, const Operator& b);

    // Relabel legs without touching entries; dimensions must agree.
    Operator with_spaces(std::vector<Space> codomain, std::vector<Space> domain) const;

private:
    std::vector<Space> cod_, dom_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

std::size_t total_dim(const std::vector<Space>& legs);
std::vector<Space> aux_legs(std::size_t n, std::size_t count, const std::string& label = "aux");

// E_ab on C^n, 1-based indices.
Operator matrix_unit(std::size_t n, int a, int b);
Operator flip(std::size_t n);

Operator kron(const Operator& a, const Operator& b);
Operator kron(const std::vector<Operator>& ops);

// op acts on the legs listed in positions (1-based, in op's own leg order);
// identity on the rest of legs.
Operator embed_leg(const Operator& op, const std::vector<int>& positions, const std::vector<Space>& legs);

// Trace over the listed legs (1-based); each must be square.
Operator partial_trace(const Operator& op, const std::vector<int>& traced);

// Apply a two-leg matrix m (on C^n (x) C^n) to legs i, j (1-based, i != j)
// of a vector living in (C^n)^{(x)k} (x) C^rest.
Vec apply_two_leg(const Operator& m, int i, int j, std::size_t n, std::size_t k, std::size_t rest, const Vec& v);

} // namespace nbv
