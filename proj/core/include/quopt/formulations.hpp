/**
 * @file formulations.hpp
 * @brief QUBO/HUBO cost polynomials for every problem kind and the decoding
 *        from minimizer bit assignments back to problem-level solutions.
 *
 * Every polynomial is built to be MINIMIZED and its global minimizers,
 * decoded through the kind's bit layout, are exactly the classical optima.
 * Penalty weights use B = 1 and A large enough that no constraint violation
 * can pay for itself; the per-kind choices are documented at the builders.
 *
 * Bit layouts (variable index -> meaning):
 *   connected_components      x_v, v in [0,n)
 *   community_detection       x_v = side of v
 *   k_clique                  x_v = v selected
 *   graph_isomorphism         x_{v*n+i} = (f(v) == i)
 *   graph_coloring            x_{v*k+c} = (color(v) == c)
 *   traveling_salesman        x_{(v-1)*(n-1)+(t-1)} = (v visited at time t);
 *                             node 0 is pinned to time 0
 *   weighted_minmax_matching  x_e = edge e matched
 *   vertex_cover              x_v = v in cover
 *   edge_cover                x_e = edge e in cover
 *   max_flow                  arc a carries f_a = x_{2a} + 2*x_{2a+1}
 *   min_cut                   x_v = v on sink side
 *   hyper_maxcut              x_v = side of v
 */

#pragma once

#include "quopt/polynomial.hpp"
#include "quopt/problems.hpp"

namespace quopt {

/// Number of binary variables (= qubits) the kind's layout needs.
int qubit_count(const ProblemInstance &instance);

/// Cost polynomial whose argmin set decodes to brute_force_optimum exactly.
BinaryPolynomial build_polynomial(const ProblemInstance &instance);

/// Per-hyperedge spin cost term
///   C_e(Z) = (2^{n-2}-1)/2^{n-2} I - 1/2^{n-2} * sum of all even-order
///            products of the edge's spin variables (orders 2..m),
/// n = |e|, m = n for even n and n-1 otherwise. Evaluates to -1 exactly on
/// the two monochromatic assignments and +1 on every other assignment.
IsingPolynomial hyper_maxcut_edge_term(const std::vector<int> &qubits);

/// Decodes a full bit assignment (one entry per variable, index order as in
/// the layout table above) into a problem-level solution, validating it and
/// filling in the classical objective. Structurally invalid encodings throw
/// ParameterError; classically invalid decodes throw DataError.
ClassicalSolution decode_assignment(const ProblemInstance &instance,
                                    const std::vector<int> &assignment);

/// Convenience: decode from a rendered bitstring (MSB-first, as produced by
/// format_bits and stored in spectra).
ClassicalSolution decode_bitstring(const ProblemInstance &instance,
                                   const std::string &bits);

} // namespace quopt
