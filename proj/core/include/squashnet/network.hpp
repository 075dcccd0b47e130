#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "squashnet/activation.hpp"
#include "squashnet/errors.hpp"

namespace squashnet {

using Point = std::vector<double>;

/// f(x) = bias + weights . x
struct AffineMap {
    double bias = 0.0;
    std::vector<double> weights;

    double operator()(std::span<const double> x) const;
};

/// One dense layer, row-major: out_r = sigma(bias[r] + sum_c weights[r][c] in_c).
struct DenseLayer {
    int out = 0;
    int in = 0;
    std::vector<double> weights;  ///< out * in entries, row-major
    std::vector<double> bias;     ///< out entries

    double& at(int row, int col) {
        return weights[static_cast<std::size_t>(row) * in + col];
    }
    double at(int row, int col) const {
        return weights[static_cast<std::size_t>(row) * in + col];
    }
};

struct NetworkStats {
    int depth = 1;                  ///< hidden layer count + 1
    std::vector<int> widths;        ///< hidden-layer output sizes, bottom first
    long long parameter_count = 0;  ///< sum over layers, output included, of (in+1)*out
};

/// An explicit stacked-affine network: hidden layers each followed by an
/// elementwise squashing, then a scalar affine output that is optionally
/// squashed as well.
///
/// With h hidden layers and an affine output this is a depth-(h+1) affine
/// combination of depth-h squashed nodes; the squashed-output variant is a
/// single node one level up. Storage is dense (merges create explicit zero
/// blocks) and evaluation runs layer by layer, rows in order, so results are
/// reproducible bit for bit across runs.
class LayeredNetwork {
public:
    /// Wraps an affine map: no hidden layers, optionally squashed output.
    LayeredNetwork(int input_dim, AffineMap output_map, SquashingFunction sigma,
                   bool output_squashed = false);

    /// Full constructor; validates the layer dimension chain.
    LayeredNetwork(int input_dim, std::vector<DenseLayer> hidden, AffineMap output_map,
                   bool output_squashed, SquashingFunction sigma);

    /// A constant-valued network padded with `hidden_count` one-node
    /// zero-weight hidden layers. A squashed constant stores sigma's quantile
    /// of `value` in the output bias, so it needs value in (0, 1).
    static LayeredNetwork constant(const SquashingFunction& sigma, int input_dim,
                                   int hidden_count, double value, bool squashed);

    int input_dim() const noexcept { return input_dim_; }
    int depth() const noexcept { return static_cast<int>(hidden_.size()) + 1; }
    bool output_squashed() const noexcept { return output_squashed_; }
    const SquashingFunction& sigma() const noexcept { return sigma_; }
    const std::vector<DenseLayer>& hidden_layers() const noexcept { return hidden_; }
    const AffineMap& output() const noexcept { return output_; }

    double evaluate(std::span<const double> x) const;

    /// JSON text; deserialize(serialize()) reproduces the exact same doubles
    /// and the exact same bytes on re-serialization.
    std::string serialize() const;
    static LayeredNetwork deserialize(std::string_view bytes);

    void save(const std::string& path) const;
    static LayeredNetwork load(const std::string& path);

private:
    int input_dim_ = 0;
    std::vector<DenseLayer> hidden_;
    AffineMap output_;
    bool output_squashed_ = false;
    SquashingFunction sigma_ = SquashingFunction::logistic();
};

NetworkStats stats(const LayeredNetwork& net);

/// bias + sum_j coeffs[j] * nets[j] for squashed nodes of equal depth: the
/// step that moves up one level. Hidden stacks merge block-diagonally over
/// the shared input and the inputs' output nodes become the new top hidden
/// layer, so the result evaluates to exactly the stated combination.
/// Networks of unequal depth must be lifted and re-squashed by the caller
/// first; mixed depths are rejected rather than auto-padded.
LayeredNetwork affine_combine(std::span<const LayeredNetwork> nets,
                              std::span<const double> coeffs, double bias);

/// bias + sum_j coeffs[j] * nets[j] for unsquashed networks of equal depth;
/// stays at the same level (the families are closed under affine
/// combination). Shares the block-diagonal merge with affine_combine.
LayeredNetwork superpose(std::span<const LayeredNetwork> nets,
                         std::span<const double> coeffs, double bias);

/// sigma(s + t * net(.)) for an unsquashed net; (s, t) fold into the output
/// row, so depth is unchanged and the output becomes a squashed node.
LayeredNetwork squash_affine_of(const LayeredNetwork& net, double s, double t);

/// Re-expresses a squashed node one level up: the old output row becomes a
/// one-node hidden layer and the new output is (weights = [1], bias = 0),
/// unsquashed. Evaluation is unchanged.
LayeredNetwork lift(const LayeredNetwork& net);

}  // namespace squashnet
