#include "bandspec/moments.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "bandspec/qpoly.hpp"

namespace bandspec {

namespace {

template <class T>
std::vector<T> moments_by_convolution(const std::vector<T>& a, int lo, int M) {
    // p holds b^m with lowest power m*lo
    std::vector<T> out{T(1)};
    std::vector<T> p{T(1)};
    int plo = 0;
    for (int m = 1; m <= M; ++m) {
        std::vector<T> q(p.size() + a.size() - 1, T(0));
        for (size_t i = 0; i < p.size(); ++i) {
            if (p[i] == T(0)) continue;
            for (size_t j = 0; j < a.size(); ++j) q[i + j] += p[i] * a[j];
        }
        p = std::move(q);
        plo += lo;
        out.push_back(-plo < static_cast<int>(p.size()) && -plo >= 0 ? p[-plo] : T(0));
    }
    return out;
}

}  // namespace

MomentSequence moments(const Symbol& b, int M, bool force_float) {
    if (M < 0) throw std::invalid_argument("moments: M must be >= 0");
    if (b.is_zero()) throw std::invalid_argument("moments: zero symbol");
    MomentSequence ms;
    if (b.has_exact() && !force_float) {
        std::vector<mpq_class> a(b.hi() - b.lo() + 1, 0);
        for (auto& [k, v] : b.exact_entries()) a[k - b.lo()] = v;
        ms.exact = moments_by_convolution(a, b.lo(), M);
        for (const auto& v : *ms.exact) ms.values.emplace_back(v.get_d(), 0.0);
    } else {
        std::vector<cplx> a(b.coeffs());
        ms.values = moments_by_convolution(a, b.lo(), M);
        for (const auto& v : ms.values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::runtime_error("moments: overflow in float mode");
    }
    return ms;
}

HankelData hankel(const MomentSequence& ms, int n) {
    if (n < 0) throw std::invalid_argument("hankel: n must be >= 0");
    if (n >= 1 && ms.M() < 2 * n - 1) throw std::invalid_argument("hankel: insufficient moments");
    HankelData hd;
    hd.n = n;
    hd.exact = ms.is_exact();
    if (!hd.exact && n > 14)
        throw std::invalid_argument("hankel: float determinants beyond n = 14 are meaningless; use rational moments");
    // row index of H~_n: rows 0..n-2 and n of H_{n+1}
    auto trow = [n](int i) { return i < n - 1 ? i : n; };
    hd.Hf = Eigen::MatrixXcd(n, n);
    hd.Htf = Eigen::MatrixXcd(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            hd.Hf(i, j) = ms.values[i + j];
            hd.Htf(i, j) = ms.values[trow(i) + j];
        }
    if (hd.exact) {
        const auto& h = *ms.exact;
        hd.H.assign(n, std::vector<mpq_class>(n));
        hd.Ht.assign(n, std::vector<mpq_class>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                hd.H[i][j] = h[i + j];
                hd.Ht[i][j] = h[trow(i) + j];
            }
        hd.det_H = exact_determinant(hd.H);
        hd.det_Ht = n == 0 ? mpq_class(0) : exact_determinant(hd.Ht);
        hd.det_Hf = hd.det_H.get_d();
        hd.det_Htf = hd.det_Ht.get_d();
    } else {
        hd.det_Hf = n == 0 ? cplx(1.0) : hd.Hf.partialPivLu().determinant();
        hd.det_Htf = n == 0 ? cplx(0.0) : hd.Htf.partialPivLu().determinant();
    }
    return hd;
}

PositivityReport hankel_positivity(const MomentSequence& ms, int N) {
    if (ms.M() < 2 * N - 2) throw std::invalid_argument("hankel_positivity: insufficient moments");
    PositivityReport rep;
    rep.checked = N;
    rep.exact = ms.is_exact();
    if (rep.exact) {
        const auto& h = *ms.exact;
        for (int n = 1; n <= N; ++n) {
            QMatrix H(n, std::vector<mpq_class>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) H[i][j] = h[i + j];
            if (exact_determinant(std::move(H)) <= 0) {
                rep.pass = false;
                rep.first_failure = n;
                return rep;
            }
        }
        return rep;
    }
    for (int n = 1; n <= N; ++n) {
        Eigen::MatrixXd H(n, n);
        bool real = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                H(i, j) = ms.values[i + j].real();
                if (std::abs(ms.values[i + j].imag()) > 1e-12 * (1.0 + std::abs(ms.values[i + j]))) real = false;
            }
        Eigen::LLT<Eigen::MatrixXd> llt(H);
        if (!real || llt.info() != Eigen::Success) {
            rep.pass = false;
            rep.first_failure = n;
            return rep;
        }
    }
    return rep;
}

MonteCarloEstimate hankel_det_mc(const Symbol& b, int n, long samples, std::uint64_t seed, int threads) {
    if (n < 1) throw std::invalid_argument("hankel_det_mc: n must be >= 1");
    if (samples < 1000) throw std::invalid_argument("hankel_det_mc: at least 1000 samples");
    const double lognf = std::lgamma(n + 1.0);
    std::vector<cplx> val(samples);
    auto body = [&](long k0, long k1) {
        std::vector<cplx> w(n);
        std::uniform_real_distribution<double> U(-std::numbers::pi, std::numbers::pi);
        for (long k = k0; k < k1; ++k) {
            std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                             static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(static_cast<std::uint64_t>(k) >> 32)};
            std::mt19937_64 eng(sq);
            for (int i = 0; i < n; ++i) w[i] = eval(b, std::polar(1.0, U(eng)));
            double logmag = -lognf, phase = 0.0;
            bool zero = false;
            for (int i = 0; i < n && !zero; ++i)
                for (int j = i + 1; j < n; ++j) {
                    cplx d = w[j] - w[i];
                    if (d == cplx(0.0)) {
                        zero = true;
                        break;
                    }
                    logmag += 2.0 * std::log(std::abs(d));
                    phase += 2.0 * std::arg(d);
                }
            val[k] = zero ? cplx(0.0) : std::polar(std::exp(logmag), phase);
        }
    };
    threads = std::max(1, threads);
    if (threads == 1) {
        body(0, samples);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(body, samples * t / threads, samples * (t + 1) / threads);
        for (auto& t : pool) t.join();
    }
    cplx mean = 0.0;
    for (const auto& v : val) mean += v;
    mean /= static_cast<double>(samples);
    double var = 0.0;
    for (const auto& v : val) var += std::norm(v - mean);
    var /= static_cast<double>(samples - 1);
    MonteCarloEstimate out;
    out.estimate = mean;
    out.std_error = std::sqrt(var / samples);
    out.samples = samples;
    out.seed = seed;
    return out;
}

}  // namespace bandspec
