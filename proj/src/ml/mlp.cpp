#include "bermuda/ml/mlp.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bermuda/errors.hpp"
#include "bermuda/rng.hpp"

namespace bermuda::ml {

MlpRegressor::MlpRegressor(MlpConfig config) : config_(config) {
    if (config.n_hidden < 1) throw std::invalid_argument("mlp: n_hidden must be >= 1");
    if (config.n_neurons < 1) throw std::invalid_argument("mlp: n_neurons must be >= 1");
    if (!(config.learning_rate > 0.0))
        throw std::invalid_argument("mlp: learning_rate must be > 0");
    if (config.batch_size < 1) throw std::invalid_argument("mlp: batch_size must be >= 1");
    if (config.epochs < 0) throw std::invalid_argument("mlp: epochs must be >= 0");
}

void MlpRegressor::init_weights(int n_features) {
    SeqRng rng(config_.seed, 0x6d6c70u);  // weight-init stream
    const int layers = config_.n_hidden + 1;
    w_.resize(layers);
    b_.resize(layers);
    int fan_in = n_features;
    for (int l = 0; l < layers; ++l) {
        const int fan_out = l == config_.n_hidden ? 1 : config_.n_neurons;
        const double sd = std::sqrt(2.0 / static_cast<double>(fan_in));
        w_[l].resize(fan_out, fan_in);
        for (Eigen::Index r = 0; r < w_[l].rows(); ++r)
            for (Eigen::Index c = 0; c < w_[l].cols(); ++c) w_[l](r, c) = sd * rng.normal();
        b_[l] = Vector::Zero(fan_out);
        fan_in = fan_out;
    }
}

namespace {

// Forward pass keeping pre-activations; x comes in as (batch x features),
// activations are stored transposed (units x batch).
struct ForwardState {
    std::vector<Matrix> act;  // act[0] = input^T, act[l+1] = hidden l output
};

Matrix forward(const std::vector<Matrix>& w, const std::vector<Vector>& b, const Matrix& x,
               ForwardState* state) {
    Matrix a = x.transpose();
    if (state) state->act.push_back(a);
    for (std::size_t l = 0; l < w.size(); ++l) {
        Matrix z = (w[l] * a).colwise() + b[l];
        if (l + 1 < w.size()) z = z.cwiseMax(0.0);  // ReLU on hidden layers
        a = std::move(z);
        if (state) state->act.push_back(a);
    }
    return a;  // (1 x batch)
}

}  // namespace

MlpRegressor::Gradients MlpRegressor::loss_and_gradients(const Matrix& x,
                                                         const Vector& y) const {
    if (w_.empty()) throw std::logic_error("mlp: no weights initialized");
    const double n = static_cast<double>(x.rows());
    ForwardState fs;
    const Matrix out = forward(w_, b_, x, &fs);
    const Eigen::RowVectorXd err = out.row(0) - y.transpose();

    Gradients g;
    g.loss = err.squaredNorm() / n;
    g.dw.resize(w_.size());
    g.db.resize(w_.size());

    // delta holds dL/dz for the current layer, (units x batch)
    Matrix delta = (2.0 / n) * err;
    for (int l = static_cast<int>(w_.size()) - 1; l >= 0; --l) {
        g.dw[l] = delta * fs.act[l].transpose();
        g.db[l] = delta.rowwise().sum();
        if (l > 0) {
            delta = w_[l].transpose() * delta;
            // ReLU mask from the stored activations of layer l
            delta = delta.cwiseProduct(
                (fs.act[l].array() > 0.0).cast<double>().matrix());
        }
    }
    return g;
}

void MlpRegressor::do_fit(const Matrix& x, const Vector& y) {
    init_weights(static_cast<int>(x.cols()));

    std::vector<Matrix> mw(w_.size()), vw(w_.size());
    std::vector<Vector> mb(w_.size()), vb(w_.size());
    for (std::size_t l = 0; l < w_.size(); ++l) {
        mw[l] = Matrix::Zero(w_[l].rows(), w_[l].cols());
        vw[l] = Matrix::Zero(w_[l].rows(), w_[l].cols());
        mb[l] = Vector::Zero(b_[l].size());
        vb[l] = Vector::Zero(b_[l].size());
    }

    const Eigen::Index n = x.rows();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    SeqRng shuffle_rng(config_.seed, 0x626174u);  // batch-order stream

    const double b1 = config_.beta1, b2 = config_.beta2, eps = config_.epsilon;
    double b1t = 1.0, b2t = 1.0;
    long step = 0;

    for (int epoch = 0; epoch < config_.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        double epoch_loss = 0.0;
        for (Eigen::Index start = 0; start < n; start += config_.batch_size) {
            const Eigen::Index len = std::min<Eigen::Index>(config_.batch_size, n - start);
            Matrix xb(len, x.cols());
            Vector yb(len);
            for (Eigen::Index i = 0; i < len; ++i) {
                xb.row(i) = x.row(order[start + i]);
                yb(i) = y(order[start + i]);
            }
            const Gradients g = loss_and_gradients(xb, yb);
            epoch_loss += g.loss * static_cast<double>(len);

            ++step;
            b1t *= b1;
            b2t *= b2;
            for (std::size_t l = 0; l < w_.size(); ++l) {
                mw[l] = b1 * mw[l] + (1.0 - b1) * g.dw[l];
                vw[l] = b2 * vw[l] + (1.0 - b2) * g.dw[l].cwiseProduct(g.dw[l]);
                mb[l] = b1 * mb[l] + (1.0 - b1) * g.db[l];
                vb[l] = b2 * vb[l] + (1.0 - b2) * g.db[l].cwiseProduct(g.db[l]);

                // Nesterov-adjusted first moment
                const Matrix mw_hat =
                    (b1 * mw[l] + (1.0 - b1) * g.dw[l]) / (1.0 - b1t);
                const Vector mb_hat =
                    (b1 * mb[l] + (1.0 - b1) * g.db[l]) / (1.0 - b1t);
                const Matrix vw_hat = vw[l] / (1.0 - b2t);
                const Vector vb_hat = vb[l] / (1.0 - b2t);

                w_[l] -= config_.learning_rate *
                         (mw_hat.array() / (vw_hat.array().sqrt() + eps)).matrix();
                b_[l] -= config_.learning_rate *
                         (mb_hat.array() / (vb_hat.array().sqrt() + eps)).matrix();
            }
        }
        if (!std::isfinite(epoch_loss))
            throw numerical_error("mlp: training diverged at epoch " + std::to_string(epoch) +
                                  " (loss is not finite); lower the learning rate");
    }
}

Vector MlpRegressor::do_predict(const Matrix& x) const {
    return forward(w_, b_, x, nullptr).row(0).transpose();
}

nlohmann::json MlpRegressor::to_json() const {
    nlohmann::json j;
    j["format_version"] = 1;
    j["kind"] = kind();
    j["n_hidden"] = config_.n_hidden;
    j["n_neurons"] = config_.n_neurons;
    j["learning_rate"] = config_.learning_rate;
    j["batch_size"] = config_.batch_size;
    j["epochs"] = config_.epochs;
    j["beta1"] = config_.beta1;
    j["beta2"] = config_.beta2;
    j["epsilon"] = config_.epsilon;
    j["seed"] = config_.seed;
    nlohmann::json ws = nlohmann::json::array(), bs = nlohmann::json::array();
    for (const auto& w : w_) ws.push_back(matrix_to_json(w));
    for (const auto& b : b_) bs.push_back(vector_to_json(b));
    j["weights"] = std::move(ws);
    j["biases"] = std::move(bs);
    j["n_features"] = n_features();
    return j;
}

std::unique_ptr<Regressor> MlpRegressor::from_json(const nlohmann::json& j) {
    MlpConfig c;
    c.n_hidden = j.at("n_hidden").get<int>();
    c.n_neurons = j.at("n_neurons").get<int>();
    c.learning_rate = j.at("learning_rate").get<double>();
    c.batch_size = j.at("batch_size").get<int>();
    c.epochs = j.at("epochs").get<int>();
    c.beta1 = j.at("beta1").get<double>();
    c.beta2 = j.at("beta2").get<double>();
    c.epsilon = j.at("epsilon").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    auto m = std::make_unique<MlpRegressor>(c);
    for (const auto& w : j.at("weights")) m->w_.push_back(matrix_from_json(w));
    for (const auto& b : j.at("biases")) m->b_.push_back(vector_from_json(b));
    m->restore_n_features(j.at("n_features").get<int>());
    return m;
}

std::unique_ptr<Regressor> MlpRegressor::clone_unfitted() const {
    return std::make_unique<MlpRegressor>(config_);
}

}  // namespace bermuda::ml
