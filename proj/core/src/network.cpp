#include "squashnet/network.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace squashnet {

using nlohmann::json;

double AffineMap::operator()(std::span<const double> x) const {
    if (x.size() != weights.size()) {
        throw InvalidInputError("affine map: point dimension mismatch");
    }
    double acc = bias;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i] * x[i];
    }
    return acc;
}

namespace {

void validate_chain(int input_dim, const std::vector<DenseLayer>& hidden,
                    const AffineMap& output) {
    if (input_dim < 1) {
        throw InvalidInputError("network: input_dim must be >= 1");
    }
    int expect = input_dim;
    for (std::size_t l = 0; l < hidden.size(); ++l) {
        const DenseLayer& layer = hidden[l];
        if (layer.out < 1 || layer.in != expect) {
            throw InvalidInputError("network: layer " + std::to_string(l) +
                                    " dimensions break the chain");
        }
        if (layer.weights.size() != static_cast<std::size_t>(layer.out) * layer.in ||
            layer.bias.size() != static_cast<std::size_t>(layer.out)) {
            throw InvalidInputError("network: layer " + std::to_string(l) +
                                    " storage does not match its dimensions");
        }
        expect = layer.out;
    }
    if (output.weights.size() != static_cast<std::size_t>(expect)) {
        throw InvalidInputError("network: output row length must equal the last layer width");
    }
}

}  // namespace

LayeredNetwork::LayeredNetwork(int input_dim, AffineMap output_map, SquashingFunction sigma,
                               bool output_squashed)
    : LayeredNetwork(input_dim, {}, std::move(output_map), output_squashed, std::move(sigma)) {}

LayeredNetwork::LayeredNetwork(int input_dim, std::vector<DenseLayer> hidden,
                               AffineMap output_map, bool output_squashed,
                               SquashingFunction sigma)
    : input_dim_(input_dim),
      hidden_(std::move(hidden)),
      output_(std::move(output_map)),
      output_squashed_(output_squashed),
      sigma_(std::move(sigma)) {
    validate_chain(input_dim_, hidden_, output_);
}

LayeredNetwork LayeredNetwork::constant(const SquashingFunction& sigma, int input_dim,
                                        int hidden_count, double value, bool squashed) {
    if (hidden_count < 0) {
        throw InvalidInputError("constant: hidden_count must be >= 0");
    }
    std::vector<DenseLayer> hidden;
    hidden.reserve(hidden_count);
    int in = input_dim;
    for (int l = 0; l < hidden_count; ++l) {
        DenseLayer layer;
        layer.out = 1;
        layer.in = in;
        layer.weights.assign(static_cast<std::size_t>(in), 0.0);
        layer.bias.assign(1, 0.0);
        hidden.push_back(std::move(layer));
        in = 1;
    }
    AffineMap out;
    out.weights.assign(static_cast<std::size_t>(in), 0.0);
    out.bias = squashed ? sigma.quantile(value) : value;
    return LayeredNetwork(input_dim, std::move(hidden), std::move(out), squashed, sigma);
}

double LayeredNetwork::evaluate(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(input_dim_)) {
        throw InvalidInputError("evaluate: point dimension mismatch");
    }
    std::vector<double> cur(x.begin(), x.end());
    std::vector<double> next;
    for (const DenseLayer& layer : hidden_) {
        next.assign(static_cast<std::size_t>(layer.out), 0.0);
        const double* w = layer.weights.data();
        for (int r = 0; r < layer.out; ++r) {
            double acc = layer.bias[r];
            const double* row = w + static_cast<std::size_t>(r) * layer.in;
            for (int c = 0; c < layer.in; ++c) {
                acc += row[c] * cur[c];
            }
            next[r] = sigma_.value(acc);
        }
        cur.swap(next);
    }
    double acc = output_.bias;
    for (std::size_t i = 0; i < output_.weights.size(); ++i) {
        acc += output_.weights[i] * cur[i];
    }
    return output_squashed_ ? sigma_.value(acc) : acc;
}

NetworkStats stats(const LayeredNetwork& net) {
    NetworkStats s;
    s.depth = net.depth();
    long long params = 0;
    for (const DenseLayer& layer : net.hidden_layers()) {
        s.widths.push_back(layer.out);
        params += static_cast<long long>(layer.in + 1) * layer.out;
    }
    params += static_cast<long long>(net.output().weights.size()) + 1;
    s.parameter_count = params;
    return s;
}

namespace {

void check_combinable(std::span<const LayeredNetwork> nets, std::span<const double> coeffs,
                      bool want_squashed, const char* op) {
    if (nets.empty()) {
        throw InvalidInputError(std::string(op) + ": need at least one network");
    }
    if (coeffs.size() != nets.size()) {
        throw InvalidInputError(std::string(op) + ": coefficient count must match network count");
    }
    const LayeredNetwork& first = nets[0];
    for (const LayeredNetwork& n : nets) {
        if (n.output_squashed() != want_squashed) {
            throw InvalidInputError(std::string(op) + (want_squashed
                                        ? ": all networks must have squashed output"
                                        : ": all networks must have affine (unsquashed) output"));
        }
        if (n.input_dim() != first.input_dim()) {
            throw InvalidInputError(std::string(op) + ": mismatched input dimensions");
        }
        if (n.depth() != first.depth()) {
            throw InvalidInputError(std::string(op) +
                                    ": mixed depths; lift shallower networks first");
        }
        if (!(n.sigma() == first.sigma())) {
            throw InvalidInputError(std::string(op) + ": mixed activation functions");
        }
    }
}

/// Merges the hidden stacks of same-depth networks over a shared input.
/// Level 0 stacks rows over the common input; deeper levels are
/// block-diagonal over the concatenated previous level.
std::vector<DenseLayer> merge_hidden(std::span<const LayeredNetwork> nets) {
    const std::size_t levels = nets[0].hidden_layers().size();
    std::vector<DenseLayer> merged;
    merged.reserve(levels);
    for (std::size_t level = 0; level < levels; ++level) {
        DenseLayer m;
        int total_out = 0;
        int total_in = 0;
        for (const LayeredNetwork& n : nets) {
            total_out += n.hidden_layers()[level].out;
            total_in += n.hidden_layers()[level].in;
        }
        if (level == 0) {
            total_in = nets[0].input_dim();
        }
        m.out = total_out;
        m.in = total_in;
        m.weights.assign(static_cast<std::size_t>(total_out) * total_in, 0.0);
        m.bias.assign(static_cast<std::size_t>(total_out), 0.0);
        int row_off = 0;
        int col_off = 0;
        for (const LayeredNetwork& n : nets) {
            const DenseLayer& l = n.hidden_layers()[level];
            const int block_col = (level == 0) ? 0 : col_off;
            for (int r = 0; r < l.out; ++r) {
                for (int c = 0; c < l.in; ++c) {
                    m.at(row_off + r, block_col + c) = l.at(r, c);
                }
                m.bias[row_off + r] = l.bias[r];
            }
            row_off += l.out;
            col_off += l.in;
        }
        merged.push_back(std::move(m));
    }
    return merged;
}

}  // namespace

LayeredNetwork affine_combine(std::span<const LayeredNetwork> nets,
                              std::span<const double> coeffs, double bias) {
    check_combinable(nets, coeffs, /*want_squashed=*/true, "affine_combine");
    std::vector<DenseLayer> merged = merge_hidden(nets);

    // The inputs' squashed outputs become the new top hidden layer: one node
    // per network, wired to that network's block of the level below (or to
    // the shared input when there is no level below).
    const bool over_input = merged.empty();
    DenseLayer top;
    top.out = static_cast<int>(nets.size());
    if (over_input) {
        top.in = nets[0].input_dim();
    } else {
        top.in = merged.back().out;
    }
    top.weights.assign(static_cast<std::size_t>(top.out) * top.in, 0.0);
    top.bias.assign(static_cast<std::size_t>(top.out), 0.0);
    int col_off = 0;
    for (std::size_t j = 0; j < nets.size(); ++j) {
        const AffineMap& o = nets[j].output();
        const int block_col = over_input ? 0 : col_off;
        for (std::size_t c = 0; c < o.weights.size(); ++c) {
            top.at(static_cast<int>(j), block_col + static_cast<int>(c)) = o.weights[c];
        }
        top.bias[j] = o.bias;
        col_off += static_cast<int>(o.weights.size());
    }
    merged.push_back(std::move(top));

    AffineMap out;
    out.bias = bias;
    out.weights.assign(coeffs.begin(), coeffs.end());
    return LayeredNetwork(nets[0].input_dim(), std::move(merged), std::move(out),
                          /*output_squashed=*/false, nets[0].sigma());
}

LayeredNetwork superpose(std::span<const LayeredNetwork> nets, std::span<const double> coeffs,
                         double bias) {
    check_combinable(nets, coeffs, /*want_squashed=*/false, "superpose");
    std::vector<DenseLayer> merged = merge_hidden(nets);

    AffineMap out;
    out.bias = bias;
    if (merged.empty()) {
        // Pure affine networks all read the shared input: sum scaled rows.
        out.weights.assign(static_cast<std::size_t>(nets[0].input_dim()), 0.0);
        for (std::size_t j = 0; j < nets.size(); ++j) {
            const AffineMap& o = nets[j].output();
            for (std::size_t c = 0; c < o.weights.size(); ++c) {
                out.weights[c] += coeffs[j] * o.weights[c];
            }
            out.bias += coeffs[j] * o.bias;
        }
    } else {
        out.weights.assign(static_cast<std::size_t>(merged.back().out), 0.0);
        int col_off = 0;
        for (std::size_t j = 0; j < nets.size(); ++j) {
            const AffineMap& o = nets[j].output();
            for (std::size_t c = 0; c < o.weights.size(); ++c) {
                out.weights[col_off + static_cast<int>(c)] = coeffs[j] * o.weights[c];
            }
            out.bias += coeffs[j] * o.bias;
            col_off += static_cast<int>(o.weights.size());
        }
    }
    return LayeredNetwork(nets[0].input_dim(), std::move(merged), std::move(out),
                          /*output_squashed=*/false, nets[0].sigma());
}

LayeredNetwork squash_affine_of(const LayeredNetwork& net, double s, double t) {
    if (net.output_squashed()) {
        throw InvalidInputError("squash_affine_of: network output is already squashed");
    }
    if (!std::isfinite(s) || !std::isfinite(t)) {
        throw InvalidInputError("squash_affine_of: gate parameters must be finite");
    }
    AffineMap out;
    out.bias = s + t * net.output().bias;
    out.weights.reserve(net.output().weights.size());
    for (double w : net.output().weights) {
        out.weights.push_back(t * w);
    }
    return LayeredNetwork(net.input_dim(), net.hidden_layers(), std::move(out),
                          /*output_squashed=*/true, net.sigma());
}

LayeredNetwork lift(const LayeredNetwork& net) {
    if (!net.output_squashed()) {
        throw InvalidInputError("lift: network output is not squashed");
    }
    std::vector<DenseLayer> hidden = net.hidden_layers();
    DenseLayer top;
    top.out = 1;
    top.in = static_cast<int>(net.output().weights.size());
    top.weights = net.output().weights;
    top.bias.assign(1, net.output().bias);
    hidden.push_back(std::move(top));
    AffineMap out;
    out.bias = 0.0;
    out.weights.assign(1, 1.0);
    return LayeredNetwork(net.input_dim(), std::move(hidden), std::move(out),
                          /*output_squashed=*/false, net.sigma());
}

namespace {

json sigma_to_json(const SquashingFunction& sigma) {
    json params = json::object();
    switch (sigma.kind()) {
        case SigmaKind::logistic:
        case SigmaKind::tanh_rescaled:
            break;
        case SigmaKind::piecewise_linear_ramp:
            params["lo"] = sigma.ramp_lo();
            params["hi"] = sigma.ramp_hi();
            break;
        case SigmaKind::tabulated_monotone:
            params["xs"] = sigma.table_xs();
            params["ys"] = sigma.table_ys();
            break;
    }
    return json{{"kind", to_string(sigma.kind())}, {"params", params}};
}

SquashingFunction sigma_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw ParseError("network format: sigma must be an object with a string 'kind'");
    }
    SigmaKind kind = sigma_kind_from_string(j["kind"].get<std::string>());
    const json params = j.value("params", json::object());
    switch (kind) {
        case SigmaKind::logistic:
            return SquashingFunction::logistic();
        case SigmaKind::tanh_rescaled:
            return SquashingFunction::tanh_rescaled();
        case SigmaKind::piecewise_linear_ramp:
            if (!params.contains("lo") || !params.contains("hi")) {
                throw ParseError("network format: ramp sigma needs params.lo and params.hi");
            }
            return SquashingFunction::ramp(params["lo"].get<double>(),
                                           params["hi"].get<double>());
        case SigmaKind::tabulated_monotone:
            if (!params.contains("xs") || !params.contains("ys")) {
                throw ParseError("network format: tabulated sigma needs params.xs and params.ys");
            }
            return SquashingFunction::tabulated(params["xs"].get<std::vector<double>>(),
                                                params["ys"].get<std::vector<double>>());
    }
    throw ParseError("network format: unknown sigma kind");
}

}  // namespace

std::string LayeredNetwork::serialize() const {
    json layers = json::array();
    for (const DenseLayer& layer : hidden_) {
        json rows = json::array();
        for (int r = 0; r < layer.out; ++r) {
            json row = json::array();
            for (int c = 0; c < layer.in; ++c) {
                row.push_back(layer.at(r, c));
            }
            rows.push_back(std::move(row));
        }
        layers.push_back(json{{"weights", std::move(rows)}, {"bias", layer.bias}});
    }
    json j{
        {"input_dim", input_dim_},
        {"sigma", sigma_to_json(sigma_)},
        {"hidden_layers", std::move(layers)},
        {"output",
         json{{"weights", output_.weights}, {"bias", output_.bias}, {"squashed", output_squashed_}}},
    };
    return j.dump();
}

LayeredNetwork LayeredNetwork::deserialize(std::string_view bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("network parse error: ") + e.what(), e.byte);
    }
    try {
        if (!j.is_object()) {
            throw ParseError("network format: top level must be an object");
        }
        for (const char* key : {"input_dim", "sigma", "hidden_layers", "output"}) {
            if (!j.contains(key)) {
                throw ParseError(std::string("network format: missing field '") + key + "'");
            }
        }
        const int input_dim = j["input_dim"].get<int>();
        SquashingFunction sigma = sigma_from_json(j["sigma"]);
        std::vector<DenseLayer> hidden;
        for (const json& jl : j["hidden_layers"]) {
            DenseLayer layer;
            const json& rows = jl.at("weights");
            layer.out = static_cast<int>(rows.size());
            layer.in = layer.out > 0 ? static_cast<int>(rows[0].size()) : 0;
            layer.weights.reserve(static_cast<std::size_t>(layer.out) * layer.in);
            for (const json& row : rows) {
                if (static_cast<int>(row.size()) != layer.in) {
                    throw ParseError("network format: ragged weight matrix");
                }
                for (const json& v : row) {
                    layer.weights.push_back(v.get<double>());
                }
            }
            layer.bias = jl.at("bias").get<std::vector<double>>();
            hidden.push_back(std::move(layer));
        }
        const json& jo = j["output"];
        AffineMap out;
        out.weights = jo.at("weights").get<std::vector<double>>();
        out.bias = jo.at("bias").get<double>();
        const bool squashed = jo.at("squashed").get<bool>();
        return LayeredNetwork(input_dim, std::move(hidden), std::move(out), squashed,
                              std::move(sigma));
    } catch (const ParseError&) {
        throw;
    } catch (const InvalidInputError& e) {
        throw ParseError(std::string("network format: ") + e.what());
    } catch (const json::exception& e) {
        throw ParseError(std::string("network format: ") + e.what());
    }
}

void LayeredNetwork::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidInputError("cannot open file for writing: " + path);
    }
    out << serialize();
    out << '\n';
    if (!out) {
        throw InvalidInputError("failed writing network file: " + path);
    }
}

LayeredNetwork LayeredNetwork::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInputError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

}  // namespace squashnet
