#include "relnet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace relnet {

namespace {

double simpson(double h, double fa, double fm, double fb) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa, double fm,
             double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(m - a, fa, flm, fm);
    double right = simpson(b - m, fm, frm, fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_segment(const std::function<double(double)>& f, double a, double b,
                         double abs_tol) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = simpson(b - a, fa, fm, fb);
    return adapt(f, a, b, fa, fm, fb, whole, abs_tol, 48);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 const std::vector<double>& splits) {
    if (!(b >= a)) throw std::invalid_argument("integration bounds out of order");
    std::vector<double> pts{a};
    for (double s : splits)
        if (s > a && s < b) pts.push_back(s);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    double seg_tol = abs_tol / static_cast<double>(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate_segment(f, pts[i], pts[i + 1], seg_tol);
    return total;
}

double disk_offset_integral(const PathLoss& ell, double R, double offset, double rel_tol) {
    if (!(R > 0.0) || offset < 0.0 || offset > R)
        throw std::invalid_argument("need R > 0 and 0 <= offset <= R");
    const double d = offset;
    auto arc = [&](double rho) -> double {
        if (rho <= R - d) return 2.0 * std::numbers::pi;
        // circle of radius rho around the offset point, clipped by B_R(o)
        double cosv = (d * d + rho * rho - R * R) / (2.0 * d * rho);
        cosv = std::clamp(cosv, -1.0, 1.0);
        return 2.0 * std::acos(cosv);
    };
    auto f = [&](double rho) { return arc(rho) * ell(rho) * rho; };

    std::vector<double> splits = ell.kinks();
    if (d > 0.0) splits.push_back(R - d);

    double coarse = integrate(f, 0.0, R + d, 1e-4, splits);
    double abs_tol = rel_tol * std::max(std::abs(coarse), 1e-30);
    return integrate(f, 0.0, R + d, abs_tol, splits);
}

} // namespace relnet
