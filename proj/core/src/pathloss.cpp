#include "relnet/pathloss.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace relnet {

namespace {

// Lipschitz branch-and-bound minimization of f on [0, hi]; returns a value
// within tol of the true minimum.
double lipschitz_min(const std::function<double(double)>& f, double hi, double J2, double tol,
                     const std::vector<double>& seeds) {
    struct Node {
        double lb, a, b;
        bool operator>(const Node& o) const { return lb > o.lb; }
    };
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> q;

    double best = std::min(f(0.0), f(hi));
    for (double s : seeds)
        if (s > 0.0 && s < hi) best = std::min(best, f(s));

    auto push = [&](double a, double b, double fa, double fb) {
        double lb = std::min(fa, fb) - 0.5 * J2 * (b - a);
        if (lb < best - tol) q.push({lb, a, b});
    };
    push(0.0, hi, f(0.0), f(hi));

    int budget = 200000;
    while (!q.empty() && budget-- > 0) {
        Node n = q.top();
        q.pop();
        if (n.lb >= best - tol) break;
        double m = 0.5 * (n.a + n.b);
        double fm = f(m);
        best = std::min(best, fm);
        push(n.a, m, f(n.a), fm);
        push(m, n.b, fm, f(n.b));
    }
    return best;
}

} // namespace

PathLossExtrema certify_extrema(const PathLoss& ell, double hi, double tol) {
    double J2 = ell.lipschitz();
    if (J2 == 0.0) {
        double v = ell(0.0);
        return {v, v};
    }
    auto f = [&ell](double s) { return ell(s); };
    auto neg = [&ell](double s) { return -ell(s); };
    std::vector<double> seeds = ell.kinks();
    double lo = lipschitz_min(f, hi, J2, tol, seeds);
    double up = -lipschitz_min(neg, hi, J2, tol, seeds);
    return {lo, up};
}

} // namespace relnet
