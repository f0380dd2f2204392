#pragma once

#include "nbv/rmatrix.hpp"

#include <memory>
#include <string>
#include <vector>

namespace nbv {

struct Realization {
    enum class Kind { vector, wedge_power, symmetric_power, cyclic_span };
    Kind kind = Kind::vector;
    int k = 1;
    // cyclic_span generator: sum of coeff * (v_{w1} (x) ... (x) v_{wm}), 1-based letters
    std::vector<std::pair<Scalar, std::vector<int>>> terms;
};

std::string to_string(Realization::Kind k);

struct ModuleSpec {
    int n = 2;
    Realization realization;
    Scalar x;
    std::vector<int> weight;  // required for cyclic_span, optional check otherwise
};

// Highest weight forced by a built-in realization.
std::vector<int> builtin_weight(int n, const Realization& r);

// A finite-dimensional gl_N (rational) or U_q(gl_N) (trig) module with a
// distinguished singular vector, realized inside (C^N)^{(x) m}.
class GlModule {
public:
    const Flavor& flavor() const { return flavor_; }
    int rank() const { return n_; }
    std::size_t dim() const { return dim_; }
    const std::vector<int>& highest_weight() const { return lambda_; }
    const Vec& singular() const { return singular_; }
    const std::vector<std::vector<int>>& weights() const { return weights_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Vec>& embedding() const { return embedding_; }
    std::size_t tensor_degree() const { return degree_; }
    std::vector<Space> legs() const { return {Space{dim_, label_}}; }
    const std::string& label() const { return label_; }

    // rational: e_ab; trig: hat e_ab for a != b. 1-based.
    const Operator& e(int a, int b) const;
    // trig only
    const Operator& k(int a) const;
    const Operator& k_inv(int a) const;

    friend std::shared_ptr<const GlModule> build_module(const ModuleSpec& spec, const Flavor& flavor);

private:
    Flavor flavor_;
    int n_ = 0;
    std::size_t dim_ = 0, degree_ = 0;
    std::string label_;
    std::vector<int> lambda_;
    Vec singular_;
    std::vector<std::vector<int>> weights_;
    std::vector<std::string> labels_;
    std::vector<Vec> embedding_;  // basis vectors inside the tensor power
    std::vector<Operator> e_, k_, kinv_;
};

std::shared_ptr<const GlModule> build_module(const ModuleSpec& spec, const Flavor& flavor);

// Generator action on (C^N)^{(x) m}, dense in the word basis. Used by the
// module builder; exposed for tests.
struct TensorPower {
    Flavor flavor;
    int n;
    std::size_t m;

    std::size_t size() const;
    std::vector<int> word(std::size_t index) const;  // 1-based letters
    std::size_t index(const std::vector<int>& word) const;
    std::vector<int> weight_of(std::size_t index) const;

    // rational e_ab; trig hat e_ab (a != b), q-bracket recursion off the simple roots
    Vec e(int a, int b, const Vec& v) const;
    // trig k_a^{+-1}
    Vec k(int a, int power, const Vec& v) const;
};

} // namespace nbv
