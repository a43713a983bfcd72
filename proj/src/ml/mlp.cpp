#include "fmp/ml/mlp.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fmp {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Portable uniform in [-0.5, 0.5): identical streams across standard
// libraries, unlike std::uniform_real_distribution.
double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
}

FeatureScaling compute_scaling(const SupervisedDataset& data) {
    const std::size_t n = data.size();
    const std::size_t f = data.feature_names.size();
    FeatureScaling s;
    s.mean.assign(f, 0.0);
    s.stdev.assign(f, 0.0);
    for (const auto& row : data.rows) {
        for (std::size_t j = 0; j < f; ++j) s.mean[j] += row.features[j];
        s.label_mean += row.label;
    }
    for (std::size_t j = 0; j < f; ++j) s.mean[j] /= static_cast<double>(n);
    s.label_mean /= static_cast<double>(n);
    double lss = 0.0;
    for (const auto& row : data.rows) {
        for (std::size_t j = 0; j < f; ++j) {
            const double d = row.features[j] - s.mean[j];
            s.stdev[j] += d * d;
        }
        lss += (row.label - s.label_mean) * (row.label - s.label_mean);
    }
    for (std::size_t j = 0; j < f; ++j) {
        s.stdev[j] = std::sqrt(s.stdev[j] / static_cast<double>(n));
        if (s.stdev[j] == 0.0) s.stdev[j] = 1.0;
    }
    s.label_stdev = std::sqrt(lss / static_cast<double>(n));
    if (s.label_stdev == 0.0) s.label_stdev = 1.0;
    return s;
}

struct Forward {
    std::vector<double> hidden;
    double out = 0.0;
};

Forward forward_normalized(const MlpModel& m, std::span<const double> x) {
    Forward fw;
    fw.hidden.resize(static_cast<std::size_t>(m.n_hidden));
    for (int h = 0; h < m.n_hidden; ++h) {
        double net = m.b_hidden[static_cast<std::size_t>(h)];
        const double* w = &m.w_hidden[static_cast<std::size_t>(h * m.n_inputs)];
        for (int i = 0; i < m.n_inputs; ++i) net += w[i] * x[static_cast<std::size_t>(i)];
        fw.hidden[static_cast<std::size_t>(h)] = sigmoid(net);
    }
    fw.out = m.b_out;
    for (int h = 0; h < m.n_hidden; ++h)
        fw.out += m.w_out[static_cast<std::size_t>(h)] * fw.hidden[static_cast<std::size_t>(h)];
    return fw;
}

void normalize_row(const MlpModel& m, const DataRow& row, std::vector<double>& x, double& y) {
    x.resize(static_cast<std::size_t>(m.n_inputs));
    for (int i = 0; i < m.n_inputs; ++i) {
        const auto j = static_cast<std::size_t>(i);
        x[j] = (row.features[j] - m.scaling.mean[j]) / m.scaling.stdev[j];
    }
    y = (row.label - m.scaling.label_mean) / m.scaling.label_stdev;
}

// Gradient of (out - y)^2 / 2 for one row, accumulated into grad (flat
// layout: w_hidden, b_hidden, w_out, b_out).
void accumulate_row_gradient(const MlpModel& m, std::span<const double> x, double y,
                             const Forward& fw, std::vector<double>& grad) {
    const double err = fw.out - y;
    const std::size_t nh = static_cast<std::size_t>(m.n_hidden);
    const std::size_t ni = static_cast<std::size_t>(m.n_inputs);
    double* g_wh = grad.data();
    double* g_bh = grad.data() + nh * ni;
    double* g_wo = g_bh + nh;
    double* g_bo = g_wo + nh;
    for (std::size_t h = 0; h < nh; ++h) {
        const double a = fw.hidden[h];
        g_wo[h] += err * a;
        const double dh = err * m.w_out[h] * a * (1.0 - a);
        g_bh[h] += dh;
        for (std::size_t i = 0; i < ni; ++i) g_wh[h * ni + i] += dh * x[i];
    }
    *g_bo += err;
}

}  // namespace

double MlpModel::predict(std::span<const double> features) const {
    std::vector<double> x(static_cast<std::size_t>(n_inputs));
    for (int i = 0; i < n_inputs; ++i) {
        const auto j = static_cast<std::size_t>(i);
        x[j] = (features[j] - scaling.mean[j]) / scaling.stdev[j];
    }
    const Forward fw = forward_normalized(*this, x);
    return fw.out * scaling.label_stdev + scaling.label_mean;
}

MlpModel fit_mlp(const SupervisedDataset& data, const MlpParams& params) {
    if (data.empty()) throw std::invalid_argument("fit_mlp: empty dataset");
    if (params.cycles < 0) throw std::invalid_argument("fit_mlp: cycles must be >= 0");

    MlpModel m;
    m.params = params;
    m.feature_names = data.feature_names;
    m.scaling = compute_scaling(data);
    m.n_inputs = static_cast<int>(data.feature_names.size());
    m.n_hidden = params.hidden_size > 0 ? params.hidden_size : (m.n_inputs + 1) / 2 + 1;

    std::mt19937_64 rng(params.seed);
    const std::size_t nw = static_cast<std::size_t>(m.n_hidden * m.n_inputs);
    m.w_hidden.resize(nw);
    m.b_hidden.resize(static_cast<std::size_t>(m.n_hidden));
    m.w_out.resize(static_cast<std::size_t>(m.n_hidden));
    for (auto& w : m.w_hidden) w = next_uniform(rng);
    for (auto& w : m.b_hidden) w = next_uniform(rng);
    for (auto& w : m.w_out) w = next_uniform(rng);
    m.b_out = next_uniform(rng);

    const std::size_t n_params = nw + 2 * static_cast<std::size_t>(m.n_hidden) + 1;
    std::vector<double> prev_delta(n_params, 0.0);
    std::vector<double> grad(n_params);
    std::vector<double> x;
    double y = 0.0;

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (int epoch = 0; epoch < params.cycles; ++epoch) {
        if (params.shuffle) {
            // Fisher-Yates on the shared stream, still fully seeded.
            for (std::size_t i = order.size(); i > 1; --i) {
                const std::size_t j = static_cast<std::size_t>(rng() % i);
                std::swap(order[i - 1], order[j]);
            }
        }
        for (std::size_t r : order) {
            normalize_row(m, data.rows[r], x, y);
            const Forward fw = forward_normalized(m, x);
            if (!std::isfinite(fw.out))
                throw std::runtime_error("fit_mlp: non-finite loss at epoch " +
                                         std::to_string(epoch));
            std::fill(grad.begin(), grad.end(), 0.0);
            accumulate_row_gradient(m, x, y, fw, grad);

            auto apply = [&](double& w, std::size_t k) {
                const double delta = -params.learning_rate * grad[k] +
                                     params.momentum * prev_delta[k];
                w += delta;
                prev_delta[k] = delta;
            };
            std::size_t k = 0;
            for (auto& w : m.w_hidden) apply(w, k++);
            for (auto& w : m.b_hidden) apply(w, k++);
            for (auto& w : m.w_out) apply(w, k++);
            apply(m.b_out, k);
        }
    }
    return m;
}

std::vector<double> mlp_parameters(const MlpModel& m) {
    std::vector<double> flat;
    flat.reserve(m.w_hidden.size() + m.b_hidden.size() + m.w_out.size() + 1);
    flat.insert(flat.end(), m.w_hidden.begin(), m.w_hidden.end());
    flat.insert(flat.end(), m.b_hidden.begin(), m.b_hidden.end());
    flat.insert(flat.end(), m.w_out.begin(), m.w_out.end());
    flat.push_back(m.b_out);
    return flat;
}

void set_mlp_parameters(MlpModel& m, std::span<const double> flat) {
    const std::size_t expect = m.w_hidden.size() + m.b_hidden.size() + m.w_out.size() + 1;
    if (flat.size() != expect)
        throw std::invalid_argument("set_mlp_parameters: expected " + std::to_string(expect) +
                                    " values, got " + std::to_string(flat.size()));
    std::size_t k = 0;
    for (auto& w : m.w_hidden) w = flat[k++];
    for (auto& w : m.b_hidden) w = flat[k++];
    for (auto& w : m.w_out) w = flat[k++];
    m.b_out = flat[k];
}

double mlp_loss(const MlpModel& m, const SupervisedDataset& data) {
    std::vector<double> x;
    double y = 0.0;
    double loss = 0.0;
    for (const auto& row : data.rows) {
        normalize_row(m, row, x, y);
        const Forward fw = forward_normalized(m, x);
        loss += 0.5 * (fw.out - y) * (fw.out - y);
    }
    return loss;
}

std::vector<double> mlp_gradient(const MlpModel& m, const SupervisedDataset& data) {
    const std::size_t n_params =
        m.w_hidden.size() + m.b_hidden.size() + m.w_out.size() + 1;
    std::vector<double> grad(n_params, 0.0);
    std::vector<double> x;
    double y = 0.0;
    for (const auto& row : data.rows) {
        normalize_row(m, row, x, y);
        const Forward fw = forward_normalized(m, x);
        accumulate_row_gradient(m, x, y, fw, grad);
    }
    return grad;
}

}  // namespace fmp
