#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "deltachannel/model.hpp"
#include "deltachannel/ode.hpp"
#include "deltachannel/transition.hpp"

// Direct solution of the full coupled-channel problem. Shares nothing with
// the Green's-function reduction beyond model types and the raw integrator.

namespace deltachannel::oracle {

/// Matching conditions at every crossing point for the amplitudes
///   r, (alpha_j, beta_j) for interior channel-1 regions, t,
///   (a_n, b_n) for every coupled channel,
/// already column-equilibrated.
struct MatchingSystem {
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd rhs;
    std::vector<std::string> unknowns;
    /// Multiply a solved unknown by this to undo the column equilibration.
    Eigen::VectorXd column_scale;
    /// Reciprocal condition estimate of the equilibrated matrix (LU based).
    double rcond = 0.0;
};

struct CoupledSolution {
    TransitionResult result;
    MatchingSystem system;
};

/// Throws NumericalBreakdown when rcond < 1e-12.
CoupledSolution solve_coupled_system(const ScatteringModel& model, double energy,
                                     const IntegratorConfig& quad);

TransitionResult solve_coupled_exact(const ScatteringModel& model, double energy,
                                     const IntegratorConfig& quad);

double oracle_unitarity(const TransitionResult& result);

}  // namespace deltachannel::oracle
