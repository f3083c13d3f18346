#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "duhamel/field.hpp"

namespace duhamel {

// Differential operators. Periodic grids: spectral. Free-space grids:
// 4th-order central differences in the interior, 2nd-order central one node
// in, 2nd-order one-sided on the boundary nodes.

std::vector<double> derivative(const ScalarField& f, std::size_t axis);
std::vector<double> second_derivative(const ScalarField& f, std::size_t axis);

VectorField gradient(const ScalarField& f);
ScalarField laplacian(const ScalarField& f);

/// max over nodes and axis pairs of |d_i u_j - d_j u_i|; 0 in 1D.
double curl_residual(const VectorField& u);
/// As above, skipping free-space nodes within margin of the boundary.
double curl_residual(const VectorField& u, std::size_t margin);
/// False for free-space nodes within margin of the boundary.
bool interior_node(const Grid& g, std::size_t flat, std::size_t margin);

/// Calls fn(first, stride) for every grid line along axis.
void for_each_line(const Grid& grid, std::size_t axis,
                   const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace duhamel
