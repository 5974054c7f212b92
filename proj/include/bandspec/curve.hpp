#pragma once
// Geometry of the set where b is real: net extraction, polar Jordan curve tracing,
// class-R verdicts and the critical-angle partition.

#include <optional>
#include <string>
#include <vector>

#include "bandspec/symbol.hpp"
#include "bandspec/toeplitz.hpp"

namespace bandspec {

struct NetWindow {
    double log_rho_min = -3.0;
    double log_rho_max = 3.0;
};

struct NetPlot {
    NetWindow window;
    int n_r = 0;
    int n_theta = 0;
    std::vector<std::vector<cplx>> polylines;
    double max_vertex_residual = 0.0;  // max |Im b| / sum |a_k| rho^k over vertices
    bool encircling = false;
};

// Marching squares for Im b = 0 on a log-polar grid (log rho by theta); theta is periodic
// and sampled at half-step offsets so the real axis falls strictly inside cells.
NetPlot compute_net(const Symbol& b, NetWindow window, int n_r = 1024, int n_theta = 1024, int threads = 1);
NetWindow default_net_window(const Symbol& b);

// True if the net joins the positive and the negative real axis inside the closed upper half
// of the window (connectivity of grid cells, branches meeting only at critical points):
// together with its mirror image a closed curve around 0. Needs an even n_theta.
bool net_has_encircling_arc(const NetPlot& net);

struct CurvePartition {
    std::vector<double> phi;    // 0 = phi_0 < ... < phi_{l+1} = pi
    std::vector<double> alpha;  // per branch: min of b(gamma) on [phi_{i-1}, phi_i]
    std::vector<double> beta;   // per branch: max
    std::vector<int> orientation;  // +1 if b(gamma(t)) increases on the branch
    int ell() const { return phi.empty() ? 0 : static_cast<int>(phi.size()) - 2; }
};

struct JordanCurveSamples {
    std::vector<double> t;      // uniform on [-pi, pi], N + 1 entries
    std::vector<double> rho;    // rho(t) > 0
    std::vector<double> drho;   // rho'(t)
    std::vector<double> values; // b(gamma(t)); empty when the curve is not in b^{-1}(R)
    CurvePartition partition;
    double max_residual = 0.0;  // max |Im b(gamma(t_j))|

    int intervals() const { return static_cast<int>(t.size()) - 1; }
    cplx point(int j) const { return std::polar(rho[j], t[j]); }
};

JordanCurveSamples circle_curve(double radius, int N);

struct TraceResult {
    bool found = false;
    JordanCurveSamples curve;
    std::string reason;  // why no curve was found
    double start = 0.0;  // rho(0)
    double end = 0.0;    // rho(pi)
};

// Continuation of rho(t) on Im b(rho e^{it}) = 0 from each positive real critical point
// (increasing order); N must be a positive multiple of 4.
TraceResult trace_polar(const Symbol& b, int N = 4096);

// rho at angle t on a traced curve (Newton in double-double from the interpolated samples),
// together with rho'(t).
struct CurvePoint {
    double t = 0.0;
    double rho = 0.0;
    double drho = 0.0;
    cplx z;
    double value = 0.0;   // b(gamma(t))
    double dvalue = 0.0;  // d/dt b(gamma(t))
};
CurvePoint resample(const Symbol& b, const JordanCurveSamples& curve, double t);

// Locates sign changes of d/dt b(gamma(t)) on (0, pi) and records branch images.
JordanCurveSamples curve_critical_partition(const Symbol& b, JordanCurveSamples curve);

// gamma* = 1 / conj(gamma): radii inverted, angles kept; values are left empty
JordanCurveSamples reflect_curve(const JordanCurveSamples& curve);

enum class ClassR { yes, no, unknown };

struct ClassRVerdict {
    ClassR verdict = ClassR::unknown;
    std::optional<JordanCurveSamples> curve;  // certificate for yes
    double curve_residual = 0.0;
    std::optional<RealityReport> reality;      // evidence for no / unknown
    int witness_n = 0;
    cplx witness_lambda{0.0, 0.0};
    std::string note;
};

ClassRVerdict is_class_R(const Symbol& b, int n_probe = 30, int curve_samples = 4096);
std::string class_name(ClassR v);

// winding number of the closed polyline through the samples around 0
int winding_number(const JordanCurveSamples& curve);

}  // namespace bandspec
