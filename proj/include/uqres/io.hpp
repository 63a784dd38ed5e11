#pragma once

// JSON codecs for the file formats shared with the command-line tool.
// Complex numbers are [re, im] pairs; matrices are row-major lists of rows.
// Every decoder throws ParseError on malformed input.

#include <string>
#include <vector>

#include <json.hpp>

#include "uqres/algorithms.hpp"
#include "uqres/circuits.hpp"
#include "uqres/hamiltonian.hpp"
#include "uqres/mps.hpp"
#include "uqres/protocols.hpp"
#include "uqres/qkernel.hpp"

namespace uqres::io {

using json = nlohmann::json;

json read_file(const std::string& path);
json parse(const std::string& text);

json to_json(cplx z);
json to_json(const Mat& m);
json vec_to_json(const Vec& v);
cplx complex_from_json(const json& j);
// Accepts rows of [re, im] pairs or of plain reals.
Mat matrix_from_json(const json& j);
Vec vector_from_json(const json& j);

// {"dims": [...], "amplitudes": [[re, im], ...]}
json to_json(const StateVector& psi);
StateVector state_from_json(const json& j, std::size_t cap = kDefaultDimensionCap);
// {"dims": [...], "density": matrix}; a pure-state document is also accepted.
json to_json(const DensityOperator& rho);
DensityOperator density_from_json(const json& j, std::size_t cap = kDefaultDimensionCap);

// {"wires": [dims], "ops": [...]}. A gate carries "name" or "matrix"; a mux
// lists "branches" and "targets" (or "wires").
json to_json(const Circuit& c);
Circuit circuit_from_json(const json& j, std::size_t cap = kDefaultDimensionCap);

// {"tensors": [[A^0, A^1, ...] per site], "boundary": B}
json to_json(const MPSChain& chain);
MPSChain mps_from_json(const json& j);

// {"dims": [...], "terms": [{"sites": [...], "matrix" | "name": ..., "weight": w}]}
json to_json(const TermSum& terms);
TermSum termsum_from_json(const json& j, std::size_t cap = kDefaultDimensionCap);

// {"qubits": q, "pre": [["H", "T"], ...], "cz": bool, "post": [...]}
json to_json(const PmqcProgram& p);
PmqcProgram pmqc_from_json(const json& j);

json to_json(const TranscriptEvent& e);
json to_json(const Transcript& t);
// One compact JSON object per line.
std::string transcript_lines(const Transcript& t);

json to_json(const BranchOutcome& b);
json to_json(const AlgorithmReport& r);

} // namespace uqres::io
