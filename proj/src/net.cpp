#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "bandspec/curve.hpp"
#include "bandspec/polyroots.hpp"

namespace bandspec {

namespace {

constexpr double pi = std::numbers::pi;

double scale_at(const Symbol& b, double rho) {
    double s = 0.0;
    for (int k = b.lo(); k <= b.hi(); ++k) s += std::abs(b.coeff(k)) * std::pow(rho, k);
    return s;
}

struct Grid {
    int nu, nt;
    double u0, du, dt;
    double u(int i) const { return u0 + i * du; }
    double th(int j) const { return -pi + (j + 0.5) * dt; }
};

// point on the edge from (u_a, th_a) to (u_b, th_b) where Im b changes sign
cplx refine_edge(const Symbol& b, double ua, double ta, double ub, double tb, double fa, double& resid) {
    double lo = 0.0, hi = 1.0, flo = fa;
    auto f = [&](double s) { return eval(b, std::polar(std::exp(ua + s * (ub - ua)), ta + s * (tb - ta))).imag(); };
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double s = 0.5 * (lo + hi);
    double rho = std::exp(ua + s * (ub - ua));
    cplx z = std::polar(rho, ta + s * (tb - ta));
    resid = std::abs(eval(b, z).imag()) / scale_at(b, rho);
    return z;
}

}  // namespace

NetWindow default_net_window(const Symbol& b) {
    if (!b.is_banded()) throw std::invalid_argument("net needs a two-sided symbol");
    double mn = 1e300, mx = 0.0;
    for (cplx z : roots(shifted_poly(b, 0.0))) {
        mn = std::min(mn, std::abs(z));
        mx = std::max(mx, std::abs(z));
    }
    for (const auto& c : critical_points(b)) {
        mn = std::min(mn, std::abs(c.z));
        mx = std::max(mx, std::abs(c.z));
    }
    return {std::log(mn / 2.0), std::log(mx * 2.0)};
}

NetPlot compute_net(const Symbol& b, NetWindow window, int n_r, int n_theta, int threads) {
    if (!(window.log_rho_max > window.log_rho_min) || !std::isfinite(window.log_rho_min) ||
        !std::isfinite(window.log_rho_max))
        throw std::invalid_argument("degenerate net window");
    if (n_r < 2 || n_theta < 2) throw std::invalid_argument("net grid smaller than 2x2");
    Grid g{n_r, n_theta, window.log_rho_min, (window.log_rho_max - window.log_rho_min) / (n_r - 1),
           2.0 * pi / n_theta};

    std::vector<double> f(static_cast<size_t>(n_r) * n_theta);
    auto fill = [&](int i0, int i1) {
        for (int i = i0; i < i1; ++i) {
            double rho = std::exp(g.u(i));
            for (int j = 0; j < n_theta; ++j) f[static_cast<size_t>(i) * n_theta + j] = eval(b, std::polar(rho, g.th(j))).imag();
        }
    };
    threads = std::max(1, std::min(threads, n_r));
    if (threads == 1) {
        fill(0, n_r);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back(fill, n_r * w / threads, n_r * (w + 1) / threads);
        for (auto& th : pool) th.join();
    }
    auto F = [&](int i, int j) { return f[static_cast<size_t>(i) * n_theta + ((j % n_theta) + n_theta) % n_theta]; };

    // edge ids: u-edge (i,j)-(i+1,j) -> i*nt + j; theta-edge (i,j)-(i,j+1) -> nu*nt + i*nt + j
    const long ubase = 0, tbase = static_cast<long>(n_r) * n_theta;
    auto sgn = [](double v) { return v > 0.0; };
    // cells holding a critical point: all four crossings meet there
    std::vector<std::pair<int, int>> crit_cells;
    for (const auto& c : critical_points(b)) {
        double u = std::log(std::abs(c.z));
        double jj = (std::arg(c.z) + pi) / g.dt - 0.5;
        int i = static_cast<int>(std::floor((u - g.u0) / g.du));
        int j = (static_cast<int>(std::floor(jj)) % n_theta + n_theta) % n_theta;
        if (i >= 0 && i + 1 < n_r) crit_cells.emplace_back(i, j);
    }
    std::vector<long> parent(2 * tbase);
    for (size_t k = 0; k < parent.size(); ++k) parent[k] = static_cast<long>(k);
    auto find = [&](long x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    // cells j = nt/2 - 1 (across theta = 0) through nt - 1 (across theta = pi) cover the closed upper half plane
    auto upper_cell = [&](int j) { return n_theta % 2 == 0 && j >= n_theta / 2 - 1; };
    auto unite = [&](int j, long a, long c) {
        if (upper_cell(j)) parent[find(a)] = find(c);
    };
    std::vector<std::pair<long, long>> segs;
    bool encircling = false;
    for (int i = 0; i + 1 < n_r; ++i) {
        for (int j = 0; j < n_theta; ++j) {
            int j1 = (j + 1) % n_theta;
            double c00 = F(i, j), c10 = F(i + 1, j), c11 = F(i + 1, j1), c01 = F(i, j1);
            // edges in cyclic order: bottom (i,j)-(i+1,j), right (i+1,j)-(i+1,j1), top (i,j1)-(i+1,j1), left (i,j)-(i,j1)
            long e[4] = {ubase + static_cast<long>(i) * n_theta + j, tbase + static_cast<long>(i + 1) * n_theta + j,
                         ubase + static_cast<long>(i) * n_theta + j1, tbase + static_cast<long>(i) * n_theta + j};
            bool x[4] = {sgn(c00) != sgn(c10), sgn(c10) != sgn(c11), sgn(c01) != sgn(c11), sgn(c00) != sgn(c01)};
            int cnt = x[0] + x[1] + x[2] + x[3];
            if (cnt == 2) {
                long a = -1, c = -1;
                for (int k = 0; k < 4; ++k)
                    if (x[k]) (a < 0 ? a : c) = e[k];
                segs.emplace_back(a, c);
                unite(j, a, c);
            } else if (cnt == 4) {
                if (std::find(crit_cells.begin(), crit_cells.end(), std::make_pair(i, j)) != crit_cells.end())
                    for (int k = 1; k < 4; ++k) unite(j, e[0], e[k]);
                double th = g.th(j) + 0.5 * g.dt;
                double centre = eval(b, std::polar(std::exp(g.u(i) + 0.5 * g.du), th)).imag();
                if (sgn(centre) == sgn(c00)) {
                    segs.emplace_back(e[0], e[1]);
                    segs.emplace_back(e[2], e[3]);
                } else {
                    segs.emplace_back(e[0], e[3]);
                    segs.emplace_back(e[1], e[2]);
                }
                unite(j, segs[segs.size() - 2].first, segs[segs.size() - 2].second);
                unite(j, segs.back().first, segs.back().second);
            }
        }
    }

    // positive axis crossings sit on theta-edges j = nt/2 - 1, negative ones on j = nt - 1
    if (n_theta % 2 == 0) {
        std::vector<long> pos_roots;
        for (int i = 0; i < n_r; ++i)
            if (sgn(F(i, n_theta / 2 - 1)) != sgn(F(i, n_theta / 2)))
                pos_roots.push_back(find(tbase + static_cast<long>(i) * n_theta + n_theta / 2 - 1));
        std::sort(pos_roots.begin(), pos_roots.end());
        for (int i = 0; i < n_r && !encircling; ++i)
            if (sgn(F(i, n_theta - 1)) != sgn(F(i, 0)) &&
                std::binary_search(pos_roots.begin(), pos_roots.end(),
                                   find(tbase + static_cast<long>(i) * n_theta + n_theta - 1)))
                encircling = true;
    }

    std::unordered_map<long, std::vector<long>> adj;
    for (auto [a, c] : segs) {
        adj[a].push_back(c);
        adj[c].push_back(a);
    }
    NetPlot net;
    net.encircling = encircling;
    net.window = window;
    net.n_r = n_r;
    net.n_theta = n_theta;
    std::unordered_map<long, cplx> vert;
    auto vertex = [&](long id) {
        auto it = vert.find(id);
        if (it != vert.end()) return it->second;
        double resid = 0.0;
        cplx z;
        if (id < tbase) {
            int i = static_cast<int>(id / n_theta), j = static_cast<int>(id % n_theta);
            z = refine_edge(b, g.u(i), g.th(j), g.u(i + 1), g.th(j), F(i, j), resid);
        } else {
            long k = id - tbase;
            int i = static_cast<int>(k / n_theta), j = static_cast<int>(k % n_theta);
            z = refine_edge(b, g.u(i), g.th(j), g.u(i), g.th(j) + g.dt, F(i, j), resid);
        }
        net.max_vertex_residual = std::max(net.max_vertex_residual, resid);
        vert.emplace(id, z);
        return z;
    };

    // walk chains: open ones from their ends first, then the remaining loops
    std::vector<long> ids;
    ids.reserve(adj.size());
    for (const auto& [id, nb] : adj) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    std::unordered_map<long, bool> used;
    auto walk = [&](long start) {
        std::vector<cplx> line{vertex(start)};
        used[start] = true;
        long prev = -1, cur = start;
        for (;;) {
            long next = -1;
            for (long nb : adj[cur])
                if (nb != prev && !used[nb]) {
                    next = nb;
                    break;
                }
            if (next < 0) {
                // close loops
                for (long nb : adj[cur])
                    if (nb == start && prev != start && line.size() > 2) line.push_back(line.front());
                break;
            }
            line.push_back(vertex(next));
            used[next] = true;
            prev = cur;
            cur = next;
        }
        net.polylines.push_back(std::move(line));
    };
    for (long id : ids)
        if (!used[id] && adj[id].size() == 1) walk(id);
    for (long id : ids)
        if (!used[id]) walk(id);
    return net;
}

bool net_has_encircling_arc(const NetPlot& net) { return net.encircling; }

}  // namespace bandspec
