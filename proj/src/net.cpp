#include "srp/net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "srp/errors.hpp"

namespace srp {

namespace {

double act_forward(double x, bool relu) { return relu ? (x > 0.0 ? x : 0.0) : std::tanh(x); }

// Derivative expressed through the pre-activation value.
double act_deriv(double pre, bool relu) {
    if (relu) return pre > 0.0 ? 1.0 : 0.0;
    const double t = std::tanh(pre);
    return 1.0 - t * t;
}

template <typename M>
void apply_activation(M& m, bool relu) {
    if (relu) {
        m = m.array().max(0.0).matrix();
    } else {
        m = m.array().tanh().matrix();
    }
}

// img: ch x n^2 (row ch, column r*n+c); cols: (ch*k*k) x on^2.
void im2col(const Eigen::MatrixXd& img, int n, const ConvSpec& spec, int on,
            Eigen::MatrixXd& cols) {
    const int ch = static_cast<int>(img.rows());
    cols.resize(static_cast<Eigen::Index>(ch) * spec.kernel * spec.kernel,
                static_cast<Eigen::Index>(on) * on);
    cols.setZero();
    for (int ro = 0; ro < on; ++ro) {
        for (int co = 0; co < on; ++co) {
            const Eigen::Index out_pos = static_cast<Eigen::Index>(ro) * on + co;
            for (int kr = 0; kr < spec.kernel; ++kr) {
                const int r = ro * spec.stride - spec.pad + kr;
                if (r < 0 || r >= n) continue;
                for (int kc = 0; kc < spec.kernel; ++kc) {
                    const int c = co * spec.stride - spec.pad + kc;
                    if (c < 0 || c >= n) continue;
                    const Eigen::Index in_pos = static_cast<Eigen::Index>(r) * n + c;
                    for (int f = 0; f < ch; ++f) {
                        cols(static_cast<Eigen::Index>(f) * spec.kernel * spec.kernel +
                                 kr * spec.kernel + kc,
                             out_pos) = img(f, in_pos);
                    }
                }
            }
        }
    }
}

// Scatter-add of dCols back to the input image layout.
void col2im(const Eigen::MatrixXd& dcols, int n, const ConvSpec& spec, int on,
            Eigen::MatrixXd& dimg) {
    const int ch = static_cast<int>(dimg.rows());
    for (int ro = 0; ro < on; ++ro) {
        for (int co = 0; co < on; ++co) {
            const Eigen::Index out_pos = static_cast<Eigen::Index>(ro) * on + co;
            for (int kr = 0; kr < spec.kernel; ++kr) {
                const int r = ro * spec.stride - spec.pad + kr;
                if (r < 0 || r >= n) continue;
                for (int kc = 0; kc < spec.kernel; ++kc) {
                    const int c = co * spec.stride - spec.pad + kc;
                    if (c < 0 || c >= n) continue;
                    const Eigen::Index in_pos = static_cast<Eigen::Index>(r) * n + c;
                    for (int f = 0; f < ch; ++f) {
                        dimg(f, in_pos) +=
                            dcols(static_cast<Eigen::Index>(f) * spec.kernel * spec.kernel +
                                      kr * spec.kernel + kc,
                                  out_pos);
                    }
                }
            }
        }
    }
}

Eigen::Map<const Eigen::MatrixXd> slot_view(const Eigen::VectorXd& values,
                                            const TensorSlot& slot) {
    return {values.data() + slot.offset, slot.rows, slot.cols};
}

Eigen::Map<Eigen::MatrixXd> slot_view(Eigen::VectorXd& values, const TensorSlot& slot) {
    return {values.data() + slot.offset, slot.rows, slot.cols};
}

}  // namespace

ArchConfig desk_arch(int grid_size, int k_max) {
    ArchConfig arch;
    arch.grid_size = grid_size;
    arch.k_max = k_max;
    arch.conv = {{8, 3, 2, 1}, {16, 3, 2, 1}};
    arch.fc_width = 128;
    return arch;
}

ArchConfig paper_arch() {
    ArchConfig arch;
    arch.grid_size = 64;
    arch.k_max = 25;
    arch.conv = {{8, 3, 2, 1}, {16, 3, 2, 1}, {32, 3, 2, 1}};
    arch.fc_width = 512;
    return arch;
}

int conv_output_size(int n, const ConvSpec& spec) {
    return (n + 2 * spec.pad - spec.kernel) / spec.stride + 1;
}

void validate_arch(const ArchConfig& arch) {
    if (arch.grid_size < 1) throw std::invalid_argument("grid_size must be positive");
    if (arch.k_max < 1) throw std::invalid_argument("k_max must be positive");
    if (arch.fc_width < 1) throw std::invalid_argument("fc_width must be positive");
    if (arch.activation != "relu" && arch.activation != "tanh") {
        throw std::invalid_argument("unknown activation '" + arch.activation + "'");
    }
    int n = arch.grid_size;
    for (const ConvSpec& spec : arch.conv) {
        if (spec.out_channels < 1 || spec.kernel < 1 || spec.stride < 1 || spec.pad < 0) {
            throw std::invalid_argument("conv spec fields must be positive");
        }
        n = conv_output_size(n, spec);
        if (n < 1) throw std::invalid_argument("conv stack shrinks the grid to nothing");
    }
}

bool arch_equal(const ArchConfig& a, const ArchConfig& b) {
    if (a.grid_size != b.grid_size || a.k_max != b.k_max || a.fc_width != b.fc_width ||
        a.activation != b.activation || a.conv.size() != b.conv.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.conv.size(); ++i) {
        const ConvSpec &x = a.conv[i], &y = b.conv[i];
        if (x.out_channels != y.out_channels || x.kernel != y.kernel || x.stride != y.stride ||
            x.pad != y.pad) {
            return false;
        }
    }
    return true;
}

const TensorSlot& ParamLayout::slot(const std::string& name) const {
    for (const TensorSlot& s : slots) {
        if (s.name == name) return s;
    }
    throw std::invalid_argument("no parameter slot named '" + name + "'");
}

ParamLayout make_layout(const ArchConfig& arch) {
    validate_arch(arch);
    ParamLayout layout;
    auto add = [&layout](const std::string& name, Eigen::Index rows, Eigen::Index cols) {
        layout.slots.push_back({name, layout.total, rows, cols});
        layout.total += rows * cols;
    };
    int n = arch.grid_size;
    int ch = arch.in_channels();
    for (std::size_t i = 0; i < arch.conv.size(); ++i) {
        const ConvSpec& spec = arch.conv[i];
        add("conv" + std::to_string(i) + ".w", spec.out_channels,
            static_cast<Eigen::Index>(ch) * spec.kernel * spec.kernel);
        add("conv" + std::to_string(i) + ".b", spec.out_channels, 1);
        n = conv_output_size(n, spec);
        ch = spec.out_channels;
    }
    const Eigen::Index flat = static_cast<Eigen::Index>(ch) * n * n;
    add("actor_fc.w", arch.fc_width, flat);
    add("actor_fc.b", arch.fc_width, 1);
    add("actor.w", arch.action_count(), arch.fc_width);
    add("actor.b", arch.action_count(), 1);
    add("critic_fc.w", arch.fc_width, flat);
    add("critic_fc.b", arch.fc_width, 1);
    add("critic.w", 1, arch.fc_width);
    add("critic.b", 1, 1);
    return layout;
}

ModelParams init_params(const ArchConfig& arch, Rng& rng) {
    ParamLayout layout = make_layout(arch);
    ModelParams params;
    params.arch = arch;
    params.values = Eigen::VectorXd::Zero(layout.total);
    const bool relu = arch.activation == "relu";
    for (const TensorSlot& slot : layout.slots) {
        if (slot.name.ends_with(".b")) continue;
        const double fan_in = static_cast<double>(slot.cols);
        const double scale = std::sqrt((relu ? 2.0 : 1.0) / fan_in);
        auto view = slot_view(params.values, slot);
        for (Eigen::Index i = 0; i < view.size(); ++i) {
            view.data()[i] = scale * rng.normal();
        }
    }
    return params;
}

Eigen::VectorXd masked_softmax(const Eigen::VectorXd& logits, const ActionMask& mask) {
    if (static_cast<Eigen::Index>(mask.size()) != logits.size()) {
        throw std::invalid_argument("mask length does not match logits");
    }
    double max_logit = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < logits.size(); ++i) {
        if (mask[i] && logits[i] > max_logit) max_logit = logits[i];
    }
    if (max_logit == -std::numeric_limits<double>::infinity()) {
        throw NoFeasibleActionError("feasibility mask is all false");
    }
    Eigen::VectorXd probs = Eigen::VectorXd::Zero(logits.size());
    double total = 0.0;
    for (Eigen::Index i = 0; i < logits.size(); ++i) {
        if (mask[i]) {
            probs[i] = std::exp(logits[i] - max_logit);
            total += probs[i];
        }
    }
    for (Eigen::Index i = 0; i < logits.size(); ++i) {
        if (mask[i]) probs[i] /= total;
    }
    return probs;
}

NetOutput forward(const ModelParams& params, const StateTensor& input, const ActionMask& mask) {
    ForwardCache cache;
    return forward_cached(params, input, mask, cache);
}

NetOutput forward_cached(const ModelParams& params, const StateTensor& input,
                         const ActionMask& mask, ForwardCache& cache) {
    const ArchConfig& arch = params.arch;
    const ParamLayout layout = make_layout(arch);
    if (input.n != arch.grid_size || input.channels != arch.in_channels()) {
        throw std::invalid_argument("input tensor shape does not match architecture");
    }
    const bool relu = arch.activation == "relu";
    const std::size_t L = arch.conv.size();
    cache.inputs.resize(std::max<std::size_t>(L, 1));
    cache.cols.resize(L);
    cache.conv_pre.resize(L);
    cache.mask = mask;

    int n = arch.grid_size;
    // Input image as ch x n^2.
    cache.inputs[0].resize(arch.in_channels(), static_cast<Eigen::Index>(n) * n);
    for (int f = 0; f < arch.in_channels(); ++f) {
        cache.inputs[0].row(f) =
            input.data.segment(static_cast<Eigen::Index>(f) * n * n, static_cast<Eigen::Index>(n) * n)
                .transpose();
    }

    for (std::size_t l = 0; l < L; ++l) {
        const ConvSpec& spec = arch.conv[l];
        const int on = conv_output_size(n, spec);
        im2col(cache.inputs[l], n, spec, on, cache.cols[l]);
        auto w = slot_view(params.values, layout.slot("conv" + std::to_string(l) + ".w"));
        auto b = slot_view(params.values, layout.slot("conv" + std::to_string(l) + ".b"));
        cache.conv_pre[l].noalias() = w * cache.cols[l];
        cache.conv_pre[l].colwise() += b.col(0);
        Eigen::MatrixXd act = cache.conv_pre[l];
        apply_activation(act, relu);
        if (l + 1 < L) {
            cache.inputs[l + 1] = std::move(act);
        } else {
            cache.encoder_out = std::move(act);
        }
        n = on;
    }
    const Eigen::MatrixXd& enc = L > 0 ? cache.encoder_out : cache.inputs[0];

    Eigen::Map<const Eigen::VectorXd> flat(enc.data(), enc.size());
    auto branch = [&](const std::string& fc_name, Eigen::VectorXd& pre, Eigen::VectorXd& act) {
        auto w = slot_view(params.values, layout.slot(fc_name + ".w"));
        auto b = slot_view(params.values, layout.slot(fc_name + ".b"));
        pre.noalias() = w * flat;
        pre += b.col(0);
        act = pre;
        for (Eigen::Index i = 0; i < act.size(); ++i) {
            act[i] = act_forward(pre[i], relu);
        }
    };
    branch("actor_fc", cache.actor_fc_pre, cache.actor_fc_act);
    branch("critic_fc", cache.critic_fc_pre, cache.critic_fc_act);

    auto actor_w = slot_view(params.values, layout.slot("actor.w"));
    auto actor_b = slot_view(params.values, layout.slot("actor.b"));
    cache.logits.noalias() = actor_w * cache.actor_fc_act;
    cache.logits += actor_b.col(0);

    auto critic_w = slot_view(params.values, layout.slot("critic.w"));
    auto critic_b = slot_view(params.values, layout.slot("critic.b"));
    cache.value = (critic_w * cache.critic_fc_act)(0) + critic_b(0, 0);

    cache.probs = masked_softmax(cache.logits, mask);
    return NetOutput{cache.probs, cache.value};
}

void backward(const ModelParams& params, const ForwardCache& cache,
              const Eigen::VectorXd& dlogits, double dvalue, Eigen::VectorXd& grad) {
    const ArchConfig& arch = params.arch;
    const ParamLayout layout = make_layout(arch);
    if (grad.size() != layout.total) throw std::invalid_argument("gradient buffer size mismatch");
    const bool relu = arch.activation == "relu";
    const std::size_t L = arch.conv.size();

    auto actor_w = slot_view(params.values, layout.slot("actor.w"));
    auto critic_w = slot_view(params.values, layout.slot("critic.w"));

    auto d_actor_w = slot_view(grad, layout.slot("actor.w"));
    auto d_actor_b = slot_view(grad, layout.slot("actor.b"));
    auto d_critic_w = slot_view(grad, layout.slot("critic.w"));
    auto d_critic_b = slot_view(grad, layout.slot("critic.b"));

    d_actor_w.noalias() += dlogits * cache.actor_fc_act.transpose();
    d_actor_b.col(0) += dlogits;
    d_critic_w.noalias() += dvalue * cache.critic_fc_act.transpose();
    d_critic_b(0, 0) += dvalue;

    const Eigen::MatrixXd& enc = L > 0 ? cache.encoder_out : cache.inputs[0];
    Eigen::Map<const Eigen::VectorXd> flat(enc.data(), enc.size());
    Eigen::VectorXd dflat = Eigen::VectorXd::Zero(flat.size());
    auto branch = [&](const std::string& fc_name, const Eigen::VectorXd& dact,
                      const Eigen::VectorXd& pre) {
        Eigen::VectorXd dpre(dact.size());
        for (Eigen::Index i = 0; i < dpre.size(); ++i) {
            dpre[i] = dact[i] * act_deriv(pre[i], relu);
        }
        auto d_w = slot_view(grad, layout.slot(fc_name + ".w"));
        auto d_b = slot_view(grad, layout.slot(fc_name + ".b"));
        d_w.noalias() += dpre * flat.transpose();
        d_b.col(0) += dpre;
        auto w = slot_view(params.values, layout.slot(fc_name + ".w"));
        dflat.noalias() += w.transpose() * dpre;
    };
    branch("actor_fc", actor_w.transpose() * dlogits, cache.actor_fc_pre);
    branch("critic_fc", critic_w.transpose() * dvalue, cache.critic_fc_pre);
    if (L == 0) return;

    Eigen::MatrixXd dact =
        Eigen::Map<const Eigen::MatrixXd>(dflat.data(), enc.rows(), enc.cols());

    std::vector<int> n_in(L);
    int n = arch.grid_size;
    for (std::size_t l = 0; l < L; ++l) {
        n_in[l] = n;
        n = conv_output_size(n, arch.conv[l]);
    }

    for (std::size_t l = L; l-- > 0;) {
        const ConvSpec& spec = arch.conv[l];
        const int on = conv_output_size(n_in[l], spec);
        // dact -> dpre through the activation.
        Eigen::MatrixXd dpre(dact.rows(), dact.cols());
        for (Eigen::Index i = 0; i < dact.size(); ++i) {
            dpre.data()[i] = dact.data()[i] * act_deriv(cache.conv_pre[l].data()[i], relu);
        }
        auto d_w = slot_view(grad, layout.slot("conv" + std::to_string(l) + ".w"));
        auto d_b = slot_view(grad, layout.slot("conv" + std::to_string(l) + ".b"));
        d_w.noalias() += dpre * cache.cols[l].transpose();
        d_b.col(0) += dpre.rowwise().sum();
        if (l == 0) break;
        auto w = slot_view(params.values, layout.slot("conv" + std::to_string(l) + ".w"));
        Eigen::MatrixXd dcols = w.transpose() * dpre;
        Eigen::MatrixXd dimg = Eigen::MatrixXd::Zero(cache.inputs[l].rows(), cache.inputs[l].cols());
        col2im(dcols, n_in[l], spec, on, dimg);
        dact = std::move(dimg);
    }
}

}  // namespace srp
