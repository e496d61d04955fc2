// json_io.hpp
// JSON serialization of states, matrices and bases. The wire format is the
// object {dim, re[], im[]} with row-major matrix layout.

#pragma once

#include <string>

#include "quditlab/basis.hpp"
#include "quditlab/state.hpp"

namespace quditlab::io {

std::string to_json(const PureState& psi);
std::string to_json(const DensityMatrix& rho);
std::string to_json(const MeasurementBasis& basis);  // array of projectors

PureState pure_state_from_json(const std::string& text);
DensityMatrix density_from_json(const std::string& text);
MeasurementBasis basis_from_json(const std::string& text);

}  // namespace quditlab::io
