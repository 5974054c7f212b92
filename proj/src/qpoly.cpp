#include "bandspec/qpoly.hpp"

#include <stdexcept>

namespace bandspec {

int degree(const QPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

void trim(QPoly& p) { p.resize(degree(p) + 1); }

QPoly derivative(const QPoly& p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly c(std::max(a.size(), b.size()), mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    trim(c);
    return c;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    int db = degree(b);
    if (db < 0) throw std::domain_error("polynomial division by zero");
    QPoly r = a;
    trim(r);
    int da = degree(r);
    if (da < db) return {QPoly{}, r};
    QPoly q(da - db + 1, mpq_class(0));
    for (int i = da; i >= db; --i) {
        if (r[i] == 0) continue;
        mpq_class f = r[i] / b[db];
        q[i - db] = f;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b[j];
    }
    trim(r);
    trim(q);
    return {q, r};
}

QPoly gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (degree(b) >= 0) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    int d = degree(a);
    if (d < 0) return a;
    mpq_class lead = a[d];
    for (auto& c : a) c /= lead;
    return a;
}

std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p) {
    std::vector<std::pair<QPoly, int>> out;
    QPoly f = p;
    trim(f);
    if (degree(f) < 1) return out;
    QPoly fp = derivative(f);
    QPoly a = gcd(f, fp);
    QPoly b = divmod(f, a).first;
    QPoly c = divmod(fp, a).first;
    QPoly d = sub(c, derivative(b));
    int i = 1;
    while (degree(b) >= 1) {
        QPoly g = gcd(b, d);
        if (degree(g) >= 1) out.emplace_back(g, i);
        b = divmod(b, g).first;
        c = divmod(d, g).first;
        d = sub(c, derivative(b));
        ++i;
    }
    return out;
}

mpq_class exact_determinant(std::vector<std::vector<mpq_class>> a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    mpq_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

QPoly interpolate(const std::vector<mpq_class>& x, const std::vector<mpq_class>& y) {
    const size_t n = x.size();
    std::vector<mpq_class> c = y;
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (x[i] - x[i - j]);
    QPoly p{c[n - 1]};
    for (size_t i = n - 1; i-- > 0;) {
        // p = p * (z - x_i) + c_i
        QPoly q(p.size() + 1, 0);
        for (size_t k = 0; k < p.size(); ++k) {
            q[k + 1] += p[k];
            q[k] -= p[k] * x[i];
        }
        q[0] += c[i];
        p = std::move(q);
    }
    trim(p);
    return p;
}

}  // namespace bandspec
