#include "netgate/design.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace netgate {

std::size_t AssignmentVector::num_treated() const noexcept {
    return static_cast<std::size_t>(std::count(w.begin(), w.end(), std::uint8_t{1}));
}

Eigen::VectorXd AssignmentVector::as_vector() const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) v[static_cast<Eigen::Index>(i)] = w[i];
    return v;
}

AssignmentVector AssignmentVector::constant(std::size_t n, bool treated) {
    AssignmentVector a;
    a.w.assign(n, treated ? 1 : 0);
    a.p = 0.5;
    return a;
}

AssignmentVector bernoulli_assign(std::size_t n, double p, const SeedStream& stream) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("bernoulli_assign: p must lie in (0,1)");
    auto eng = stream.engine();
    AssignmentVector a;
    a.p = p;
    a.w.resize(n);
    for (auto& wi : a.w) wi = uniform01(eng) < p ? 1 : 0;
    return a;
}

AssignmentVector bernoulli_assign(std::span<const double> probabilities, const SeedStream& stream) {
    auto eng = stream.engine();
    AssignmentVector a;
    a.w.resize(probabilities.size());
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        const double pi = probabilities[i];
        if (!(pi > 0.0 && pi < 1.0))
            throw std::invalid_argument("bernoulli_assign: every p_i must lie in (0,1)");
        a.w[i] = uniform01(eng) < pi ? 1 : 0;
    }
    a.p = probabilities.empty()
              ? 0.5
              : std::accumulate(probabilities.begin(), probabilities.end(), 0.0) /
                    static_cast<double>(probabilities.size());
    return a;
}

void write_assignment_csv(std::ostream& out, const AssignmentVector& a) {
    for (auto wi : a.w) out << static_cast<int>(wi) << '\n';
}

}  // namespace netgate
