#include "frog/factor.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cmath>

#include "frog/errors.hpp"

namespace frog {

namespace {

void check_p2(double p2) {
    if (!(p2 > 0.0 && p2 < 1.0)) throw ParameterError("p2 must lie in (0, 1)");
    if (p2 >= 0.5)
        throw NoInvariantMeasure("the tooth-height chain has no invariant probability measure for p2 >= 1/2");
}

} // namespace

std::vector<double> apply_factor_kernel(const std::vector<double>& mu, double p2) {
    std::vector<double> out(mu.size() + 1, 0.0);
    for (std::size_t y = 0; y < mu.size(); ++y) {
        out[y + 1] += mu[y] * p2;
        out[y == 0 ? 0 : y - 1] += mu[y] * (1.0 - p2);
    }
    return out;
}

FactorMeasure factor_invariant_measure(double p2, int height) {
    check_p2(p2);
    if (height < 1) throw ParameterError("truncation height must be at least 1");
    const int n = height + 1;

    // Rows 0..H-1: balance (mu K_H)(y) - mu(y) = 0. Row H: total mass 1.
    std::vector<Eigen::Triplet<double>> entries;
    auto kernel = [&](int from, int to, double p) {
        if (to < height) entries.emplace_back(to, from, p);
    };
    for (int y = 0; y < n; ++y) {
        kernel(y, std::min(y + 1, height), p2);
        kernel(y, std::max(y - 1, 0), 1.0 - p2);
        if (y < height) entries.emplace_back(y, y, -1.0);
        entries.emplace_back(height, y, 1.0);
    }
    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(entries.begin(), entries.end());
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b(height) = 1.0;

    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
    solver.compute(a);
    if (solver.info() != Eigen::Success) throw std::runtime_error("factor chain system is singular");
    const Eigen::VectorXd x = solver.solve(b);

    FactorMeasure out;
    out.p2 = p2;
    out.height = height;
    out.mu.assign(x.data(), x.data() + n);
    const auto image = apply_factor_kernel(out.mu, p2);
    for (std::size_t y = 0; y < image.size(); ++y)
        out.residual += std::abs(image[y] - (y < out.mu.size() ? out.mu[y] : 0.0));
    for (double m : out.mu) out.mass += m;
    const double r = p2 / (1.0 - p2);
    out.tail = out.mu.back() * r / (1.0 - r);
    return out;
}

FactorMeasure factor_invariant_measure(double p2) {
    check_p2(p2);
    for (int h = 32;; h *= 2) {
        auto m = factor_invariant_measure(p2, h);
        if (m.tail < 1e-12 || h >= (1 << 22)) return m;
    }
}

} // namespace frog
