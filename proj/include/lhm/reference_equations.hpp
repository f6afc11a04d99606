#pragma once

#include "lhm/master_equation.hpp"

namespace lhm {

/// Equations of motion of the four-level scheme written out element by
/// element, independently of build_generator.
///
/// Four population equations and six upper-triangle coherences, each term
/// typed by hand so that sign slips in the Kronecker construction show up.
/// The lower triangle is filled by conjugation, so `rho` must be Hermitian.
Matrix4c reference_rhs(const SystemParams& params, const Matrix4c& rho);

}  // namespace lhm
