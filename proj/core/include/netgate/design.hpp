#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "netgate/seed_stream.hpp"

namespace netgate {

/// Realized binary treatment assignment together with the design probability.
struct AssignmentVector {
    std::vector<std::uint8_t> w;
    double p = 0.5;

    std::size_t size() const noexcept { return w.size(); }
    bool treated(std::size_t i) const noexcept { return w[i] != 0; }
    std::size_t num_treated() const noexcept;
    Eigen::VectorXd as_vector() const;

    static AssignmentVector constant(std::size_t n, bool treated);
};

/// Independent Bernoulli(p) draws. Throws std::invalid_argument unless 0 < p < 1.
AssignmentVector bernoulli_assign(std::size_t n, double p, const SeedStream& stream);

/// Independent Bernoulli(p_i) draws with unit-specific probabilities. The
/// recorded p is the mean of the p_i.
AssignmentVector bernoulli_assign(std::span<const double> probabilities, const SeedStream& stream);

/// Single-column CSV of 0/1, no header.
void write_assignment_csv(std::ostream& out, const AssignmentVector& a);

}  // namespace netgate
