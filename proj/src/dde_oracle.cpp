#include "ddlyap/dde_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "ddlyap/errors.hpp"

namespace ddlyap {

namespace {

constexpr double kOverflowGuard = 1e12;

// out = a * b, n x n row-major, out must not alias the inputs.
void mul_nn(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += a[i * n + k] * b[k * n + j];
            }
            out[i * n + j] = acc;
        }
    }
}

// out += a * b.
void mul_nn_add(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += a[i * n + k] * b[k * n + j];
            }
            out[i * n + j] += acc;
        }
    }
}

// Fixed-step RK4 integrator for the fundamental matrix of
//   x'(t) = A0 x(t) + A1 x(t - h) + integral_{-h}^{0} G(theta) x(t + theta) dtheta,
// G(theta) = sin(omega theta) B0 + cos(omega theta) B1, with zero history
// before t = 0. All past steps are kept so the delayed and distributed terms
// can be read back exactly.
//
// The distributed integral is a composite trapezoid over the mh + 1 history
// nodes of the current window [t* - h, t*]. Because the history is zero
// before t = 0, the integrand has support [max(t* - h, 0), t*]; when the
// support boundary falls inside the window (early times) the boundary node
// weights are corrected so the rule integrates the truncated support, not
// the full window. At half-steps (t* between grid nodes) history values are
// averages of adjacent frames and the support boundary sits mid-cell, which
// introduces quarter-step weights.
class Engine {
public:
    Engine(const SystemSpec& spec, double dt, std::size_t capacity_steps)
        : n_(spec.n),
          nn_(spec.n * spec.n),
          dt_(dt),
          omega_(spec.omega),
          a0_(spec.A0.data()),
          a1_(spec.A1.data()),
          b0_(spec.B0.data()),
          b1_(spec.B1.data()),
          has_delay_(spec.has_point_delay()),
          has_dist_(spec.has_distributed_delay()) {
        if (!(dt > 0.0)) {
            throw GridError("integration step dt must be positive");
        }
        const double ratio = spec.h / dt;
        const long long mh = std::llround(ratio);
        if (mh < 1 || std::abs(static_cast<double>(mh) * dt - spec.h) > 1e-9 * spec.h) {
            throw GridError("integration step dt = " + std::to_string(dt) +
                            " must divide the delay h = " + std::to_string(spec.h) +
                            " into a whole number of steps");
        }
        mh_ = static_cast<std::size_t>(mh);

        theta_.resize(mh_ + 1);
        ws_.resize(mh_ + 1);
        wc_.resize(mh_ + 1);
        for (std::size_t j = 0; j <= mh_; ++j) {
            theta_[j] = (static_cast<double>(j) - static_cast<double>(mh_)) * dt_;
            const double w = (j == 0 || j == mh_) ? dt_ / 2.0 : dt_;
            ws_[j] = w * std::sin(omega_ * theta_[j]);
            wc_[j] = w * std::cos(omega_ * theta_[j]);
        }

        p_.assign((capacity_steps + 1) * nn_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            p_[i * n_ + i] = 1.0; // Phi(0) = I
        }
        ss_.resize(nn_);
        sc_.resize(nn_);
        avg_.resize(nn_);
        st1_.resize(nn_);
        st2_.resize(nn_);
        st3_.resize(nn_);
        st4_.resize(nn_);
        ytmp_.resize(nn_);
    }

    std::size_t steps_taken() const { return k_; }
    std::size_t steps_per_delay() const { return mh_; }

    const double* frame(std::size_t k) const { return p_.data() + k * nn_; }

    double frame_norm(std::size_t k) const {
        const double* f = frame(k);
        double acc = 0.0;
        for (std::size_t e = 0; e < nn_; ++e) {
            acc += f[e] * f[e];
        }
        return std::sqrt(acc);
    }

    void step() {
        const std::size_t k = k_;
        const double* y = frame(k);
        deriv(k, /*half=*/false, /*cint=*/0, y, st1_.data());
        axpy(y, 0.5 * dt_, st1_.data());
        deriv(k, /*half=*/true, 0, ytmp_.data(), st2_.data());
        axpy(y, 0.5 * dt_, st2_.data());
        deriv(k, /*half=*/true, 0, ytmp_.data(), st3_.data());
        axpy(y, dt_, st3_.data());
        deriv(k, /*half=*/false, /*cint=*/1, ytmp_.data(), st4_.data());

        double* next = p_.data() + (k + 1) * nn_;
        const double c = dt_ / 6.0;
        for (std::size_t e = 0; e < nn_; ++e) {
            const double v = y[e] + c * (st1_[e] + 2.0 * st2_[e] + 2.0 * st3_[e] + st4_[e]);
            if (!(std::abs(v) <= kOverflowGuard)) {
                throw InstabilityError(
                    "fundamental matrix exceeded 1e12 while integrating; the trajectory is not "
                    "decaying, so the defining integral for the Lyapunov matrix diverges");
            }
            next[e] = v;
        }
        k_ = k + 1;
    }

    // Copies frames 0..k_end into a trajectory object.
    SampledTrajectory trajectory(std::size_t k_end) const {
        SampledTrajectory out;
        out.start = 0.0;
        out.step = dt_;
        out.samples.reserve(k_end + 1);
        for (std::size_t k = 0; k <= k_end; ++k) {
            DenseMatrix m(n_, n_);
            const double* f = frame(k);
            std::copy(f, f + nn_, m.data().begin());
            out.samples.push_back(std::move(m));
        }
        return out;
    }

private:
    void axpy(const double* y, double a, const double* d) {
        for (std::size_t e = 0; e < nn_; ++e) {
            ytmp_[e] = y[e] + a * d[e];
        }
    }

    // Right-hand side at step k. `half` selects the midpoint stages of RK4
    // (time k + 1/2), otherwise `cint` gives the integer stage offset (0 for
    // the start of the step, 1 for its end).
    void deriv(std::size_t k_u, bool half, std::size_t cint, const double* y, double* d) {
        const long long k = static_cast<long long>(k_u);
        const long long mh = static_cast<long long>(mh_);
        const std::size_t n = n_;
        const std::size_t nn = nn_;

        mul_nn(a0_.data(), y, d, n);

        if (has_delay_) {
            if (half) {
                const long long q = k - mh;
                if (q >= 0) {
                    const double* f0 = frame(static_cast<std::size_t>(q));
                    const double* f1 = f0 + nn;
                    for (std::size_t e = 0; e < nn; ++e) {
                        avg_[e] = 0.5 * (f0[e] + f1[e]);
                    }
                    mul_nn_add(a1_.data(), avg_.data(), d, n);
                }
            } else {
                const long long q = k + static_cast<long long>(cint) - mh;
                if (q >= 0) {
                    mul_nn_add(a1_.data(), frame(static_cast<std::size_t>(q)), d, n);
                }
            }
        }

        if (!has_dist_) {
            return;
        }

        double* ss = ss_.data();
        double* sc = sc_.data();

        if (!half) {
            const long long kc = k + static_cast<long long>(cint);
            if (kc == 0) {
                return; // t* = 0: the truncated support is a single point
            }
            const long long q0 = kc - mh;
            const long long j0 = q0 < 0 ? -q0 : 0;
            std::fill(ss, ss + nn, 0.0);
            std::fill(sc, sc + nn, 0.0);
            for (long long j = j0; j < mh; ++j) {
                const double cs = ws_[static_cast<std::size_t>(j)];
                const double cc = wc_[static_cast<std::size_t>(j)];
                const double* src = frame(static_cast<std::size_t>(q0 + j));
                for (std::size_t e = 0; e < nn; ++e) {
                    ss[e] += cs * src[e];
                    sc[e] += cc * src[e];
                }
            }
            for (std::size_t e = 0; e < nn; ++e) {
                ss[e] += ws_[mh_] * y[e];
                sc[e] += wc_[mh_] * y[e];
            }
            if (j0 > 0) {
                // The support starts exactly at node j0 (history frame 0,
                // the identity): a boundary node of the truncated rule, so
                // its composite weight drops from dt to dt/2.
                const double th = theta_[static_cast<std::size_t>(j0)];
                const double sn = std::sin(omega_ * th);
                const double cn = std::cos(omega_ * th);
                const double wb = dt_ / 2.0;
                for (std::size_t i = 0; i < n; ++i) {
                    ss[i * n + i] -= wb * sn;
                    sc[i * n + i] -= wb * cn;
                }
            }
        } else {
            // Midpoint stage: the window nodes fall between stored frames,
            // so interpolate each as the average of its neighbors.
            const long long j0 = (mh - k) > 0 ? (mh - k) : 0;
            const long long lo = k + j0 - mh;
            std::fill(ss, ss + nn, 0.0);
            std::fill(sc, sc + nn, 0.0);
            for (long long j = j0; j < mh; ++j) {
                const double cs = ws_[static_cast<std::size_t>(j)];
                const double cc = wc_[static_cast<std::size_t>(j)];
                const double* f0 = frame(static_cast<std::size_t>(lo + (j - j0)));
                const double* f1 = f0 + nn;
                for (std::size_t e = 0; e < nn; ++e) {
                    const double pair = f0[e] + f1[e];
                    ss[e] += cs * pair;
                    sc[e] += cc * pair;
                }
            }
            for (std::size_t e = 0; e < nn; ++e) {
                ss[e] = 0.5 * ss[e] + ws_[mh_] * y[e];
                sc[e] = 0.5 * sc[e] + wc_[mh_] * y[e];
            }
            if (mh - k >= 1) {
                // The support starts at theta* = -(k + 1/2) dt, the middle
                // of a cell: close the rule with a quarter-step weight at a
                // virtual node there (history value I) and shave the nearest
                // regular node down to net weight 3 dt / 4.
                const double th_star = -(static_cast<double>(k) + 0.5) * dt_;
                const double sn_s = std::sin(omega_ * th_star);
                const double cn_s = std::cos(omega_ * th_star);
                const double qw = dt_ / 4.0;
                if (k == 0) {
                    // Only the partial cell [theta*, 0] is in support:
                    // quarter weights at theta* (value I) and at 0 (value y).
                    const double sn0 = 0.0; // sin(omega * 0)
                    const double cn0 = 1.0; // cos(omega * 0)
                    for (std::size_t e = 0; e < nn; ++e) {
                        ss[e] = qw * sn0 * y[e];
                        sc[e] = qw * cn0 * y[e];
                    }
                    for (std::size_t i = 0; i < n; ++i) {
                        ss[i * n + i] += qw * sn_s;
                        sc[i * n + i] += qw * cn_s;
                    }
                } else {
                    const std::size_t jn = static_cast<std::size_t>(mh - k);
                    const double snj = std::sin(omega_ * theta_[jn]);
                    const double cnj = std::cos(omega_ * theta_[jn]);
                    const double* f0 = frame(0);
                    const double* f1 = frame(1);
                    for (std::size_t e = 0; e < nn; ++e) {
                        const double v0 = 0.5 * (f0[e] + f1[e]);
                        ss[e] -= qw * snj * v0;
                        sc[e] -= qw * cnj * v0;
                    }
                    for (std::size_t i = 0; i < n; ++i) {
                        ss[i * n + i] += qw * sn_s;
                        sc[i * n + i] += qw * cn_s;
                    }
                }
            }
        }

        mul_nn_add(b0_.data(), ss, d, n);
        mul_nn_add(b1_.data(), sc, d, n);
    }

    std::size_t n_;
    std::size_t nn_;
    std::size_t mh_ = 0;
    double dt_;
    double omega_;
    std::vector<double> a0_, a1_, b0_, b1_;
    bool has_delay_;
    bool has_dist_;
    std::vector<double> theta_, ws_, wc_;
    std::vector<double> p_;
    std::size_t k_ = 0;
    std::vector<double> ss_, sc_, avg_, st1_, st2_, st3_, st4_, ytmp_;
};

// Advances until ||Phi||_F drops below threshold at a multiple of h; returns
// that multiple. Throws InstabilityError when the cap is exhausted.
std::size_t decay_multiples(Engine& eng, double threshold, std::size_t cap) {
    const std::size_t mh = eng.steps_per_delay();
    for (std::size_t mult = 1; mult <= cap; ++mult) {
        while (eng.steps_taken() < mult * mh) {
            eng.step();
        }
        if (eng.frame_norm(mult * mh) < threshold) {
            return mult;
        }
    }
    throw InstabilityError(
        "fundamental matrix did not decay below the threshold within " + std::to_string(cap) +
        " delay intervals; the defining integral for the Lyapunov matrix cannot be truncated");
}

void validate_threshold(double threshold) {
    if (!(threshold > 0.0) || !(threshold < 1.0)) {
        throw ConfigError("decay threshold must lie strictly between 0 and 1, got " +
                          std::to_string(threshold));
    }
}

DenseMatrix kernel_at(const SystemSpec& spec, double theta) {
    return std::sin(spec.omega * theta) * spec.B0 + std::cos(spec.omega * theta) * spec.B1;
}

// Composite trapezoid weights on a (count+1)-node uniform grid.
std::vector<double> trapezoid_weights(std::size_t count, double step) {
    std::vector<double> w(count + 1, step);
    w.front() = step / 2.0;
    w.back() = step / 2.0;
    return w;
}

std::size_t checked_midpoint(const LyapunovSamples& samples) {
    if (samples.values.size() < 3 || samples.values.size() % 2 == 0) {
        throw GridError("Lyapunov samples must cover -h..h with an odd node count of at least 3");
    }
    return (samples.values.size() - 1) / 2;
}

} // namespace

DenseMatrix SampledTrajectory::value_at(double t) const {
    if (samples.empty() || !(step > 0.0)) {
        throw GridError("trajectory holds no samples");
    }
    const double rel = (t - start) / step;
    if (rel < -0.5) {
        // Pre-initial history: identically zero.
        return DenseMatrix(samples.front().rows(), samples.front().cols());
    }
    const long long k = std::llround(rel);
    if (std::abs(rel - static_cast<double>(k)) > 1e-6) {
        throw GridError("query time does not lie on the sample grid");
    }
    if (static_cast<std::size_t>(k) >= samples.size()) {
        throw GridError("query time lies beyond the sampled horizon");
    }
    return samples[static_cast<std::size_t>(k)];
}

SampledTrajectory fundamental_matrix(const SystemSpec& spec, double t_end, double dt) {
    spec.validate();
    if (!(dt > 0.0) || !(t_end >= 0.0)) {
        throw GridError("fundamental_matrix needs dt > 0 and t_end >= 0");
    }
    const long long k_end = std::llround(t_end / dt);
    if (std::abs(static_cast<double>(k_end) * dt - t_end) > 1e-9 * std::max(1.0, t_end)) {
        throw GridError("t_end must be a whole number of dt steps");
    }
    Engine eng(spec, dt, static_cast<std::size_t>(k_end));
    while (eng.steps_taken() < static_cast<std::size_t>(k_end)) {
        eng.step();
    }
    return eng.trajectory(static_cast<std::size_t>(k_end));
}

double decay_time(const SystemSpec& spec, double threshold, double dt, std::size_t horizon_cap) {
    spec.validate();
    validate_threshold(threshold);
    if (horizon_cap < 1) {
        throw ConfigError("horizon cap must be at least one delay interval");
    }
    Engine eng(spec, dt, horizon_cap * std::llround(spec.h / dt));
    const std::size_t mult = decay_multiples(eng, threshold, horizon_cap);
    return static_cast<double>(mult) * spec.h;
}

LyapunovSamples lyapunov_by_definition(const SystemSpec& spec, const SampledTrajectory& phi,
                                       double t_max, double tau_step) {
    spec.validate();
    if (phi.samples.empty() || !(phi.step > 0.0)) {
        throw GridError("trajectory holds no samples");
    }
    if (phi.start != 0.0) {
        throw GridError("trajectory must start at t = 0");
    }
    const std::size_t n = spec.n;
    if (phi.samples.front().rows() != n || phi.samples.front().cols() != n) {
        throw DimensionError("trajectory samples do not match the system dimension");
    }
    if (!(tau_step > 0.0)) {
        throw GridError("tau_step must be positive");
    }
    const double dt = phi.step;
    const long long stride = std::llround(tau_step / dt);
    if (stride < 1 || std::abs(static_cast<double>(stride) * dt - tau_step) > 1e-9 * tau_step) {
        throw GridError("tau_step must be a whole multiple of the trajectory step");
    }
    const long long nh = std::llround(spec.h / tau_step);
    if (nh < 1 || std::abs(static_cast<double>(nh) * tau_step - spec.h) > 1e-9 * spec.h) {
        throw GridError("tau_step must divide the delay h into a whole number of steps");
    }
    const long long k_max = std::llround(t_max / dt);
    if (k_max < 1 || std::abs(static_cast<double>(k_max) * dt - t_max) > 1e-9 * std::max(1.0, t_max)) {
        throw GridError("t_max must be a positive whole number of trajectory steps");
    }
    const long long needed = k_max + nh * stride;
    if (static_cast<std::size_t>(needed) >= phi.samples.size()) {
        throw GridError("trajectory too short: the Lyapunov integral needs samples up to t_max + h");
    }

    const double half_w = dt / 2.0;
    const double* w_data = spec.W.data().data();
    DenseMatrix wy(n, n);

    LyapunovSamples out;
    out.tau_step = tau_step;
    out.taus.reserve(static_cast<std::size_t>(2 * nh + 1));
    out.values.reserve(static_cast<std::size_t>(2 * nh + 1));

    for (long long i = -nh; i <= nh; ++i) {
        const long long s = i * stride;
        const long long k0 = s < 0 ? -s : 0; // zero-extended integrand below the support
        DenseMatrix u(n, n);
        double* u_data = u.data().data();
        double* wy_data = wy.data().data();
        for (long long k = k0; k <= k_max; ++k) {
            const double w = (k == 0 || k == k_max) ? half_w : dt;
            const double* x = phi.samples[static_cast<std::size_t>(k)].data().data();
            const double* y = phi.samples[static_cast<std::size_t>(k + s)].data().data();
            mul_nn(w_data, y, wy_data, n);
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    double acc = 0.0;
                    for (std::size_t j = 0; j < n; ++j) {
                        acc += x[j * n + a] * wy_data[j * n + b];
                    }
                    u_data[a * n + b] += w * acc;
                }
            }
        }
        out.taus.push_back(static_cast<double>(i) * tau_step);
        out.values.push_back(std::move(u));
    }
    return out;
}

double dynamic_residual(const SystemSpec& spec, const LyapunovSamples& samples) {
    spec.validate();
    const std::size_t mid = checked_midpoint(samples);
    const std::size_t nh = mid;
    const double tau = samples.tau_step;
    const std::vector<double> wq = trapezoid_weights(nh, tau);
    double worst = 0.0;
    for (std::size_t i = 1; i < nh; ++i) {
        const std::size_t it = mid + i;
        const DenseMatrix du =
            (samples.values[it + 1] - samples.values[it - 1]) * (1.0 / (2.0 * tau));
        DenseMatrix rhs = samples.values[it] * spec.A0 + samples.values[it - nh] * spec.A1;
        for (std::size_t j = 0; j <= nh; ++j) {
            const double theta = (static_cast<double>(j) - static_cast<double>(nh)) * tau;
            rhs += wq[j] * (samples.values[it + j - nh] * kernel_at(spec, theta));
        }
        worst = std::max(worst, (du - rhs).frobenius_norm());
    }
    return worst;
}

double symmetry_residual(const LyapunovSamples& samples) {
    const std::size_t mid = checked_midpoint(samples);
    double worst = 0.0;
    for (std::size_t i = 0; i <= mid; ++i) {
        const DenseMatrix diff = samples.values[mid - i] - samples.values[mid + i].transpose();
        worst = std::max(worst, diff.frobenius_norm());
    }
    return worst;
}

double algebraic_residual(const SystemSpec& spec, const LyapunovSamples& samples) {
    spec.validate();
    const std::size_t mid = checked_midpoint(samples);
    const std::size_t nh = mid;
    const double tau = samples.tau_step;
    const std::vector<double> wq = trapezoid_weights(nh, tau);
    DenseMatrix r = spec.W + samples.values[mid] * spec.A0 + samples.values[0] * spec.A1 +
                    spec.A0.transpose() * samples.values[mid] +
                    spec.A1.transpose() * samples.values[2 * mid];
    for (std::size_t j = 0; j <= nh; ++j) {
        const double theta = (static_cast<double>(j) - static_cast<double>(nh)) * tau;
        const DenseMatrix g = kernel_at(spec, theta);
        r += wq[j] * (samples.values[j] * g);
        r += wq[j] * (g.transpose() * samples.values[2 * mid - j]);
    }
    return r.frobenius_norm();
}

OracleResult run_oracle(const SystemSpec& spec, const OracleSettings& settings) {
    spec.validate();
    validate_threshold(settings.decay_threshold);
    if (settings.horizon_cap < 1) {
        throw ConfigError("horizon cap must be at least one delay interval");
    }
    if (!(settings.dt > 0.0) || !(settings.tau_step > 0.0)) {
        throw GridError("dt and tau_step must be positive");
    }
    // Check the output grid before paying for the integration.
    const long long stride = std::llround(settings.tau_step / settings.dt);
    if (stride < 1 ||
        std::abs(static_cast<double>(stride) * settings.dt - settings.tau_step) >
            1e-9 * settings.tau_step) {
        throw GridError("tau_step must be a whole multiple of dt");
    }
    const long long nh = std::llround(spec.h / settings.tau_step);
    if (nh < 1 || std::abs(static_cast<double>(nh) * settings.tau_step - spec.h) > 1e-9 * spec.h) {
        throw GridError("tau_step must divide the delay h into a whole number of steps");
    }

    const std::size_t mh = static_cast<std::size_t>(std::llround(spec.h / settings.dt));
    Engine eng(spec, settings.dt, (settings.horizon_cap + 1) * mh);
    const std::size_t mult = decay_multiples(eng, settings.decay_threshold, settings.horizon_cap);
    const std::size_t k_end = (mult + 1) * mh; // one extra delay interval for the tau shift
    while (eng.steps_taken() < k_end) {
        eng.step();
    }

    OracleResult result;
    result.decay_time = static_cast<double>(mult) * spec.h;
    result.decay_norm = eng.frame_norm(mult * mh);
    result.horizon = static_cast<double>(mult + 1) * spec.h;

    const SampledTrajectory phi = eng.trajectory(k_end);
    result.samples = lyapunov_by_definition(spec, phi, result.decay_time, settings.tau_step);
    result.dynamic_residual = dynamic_residual(spec, result.samples);
    result.symmetry_residual = symmetry_residual(result.samples);
    result.algebraic_residual = algebraic_residual(spec, result.samples);
    return result;
}

} // namespace ddlyap
