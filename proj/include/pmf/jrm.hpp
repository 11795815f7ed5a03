#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmf/jacobi.hpp"
#include "pmf/paramodular.hpp"

namespace pmf {

// Basis of J^cusp_{k, jN} used for slice j.
struct JacobiBasis {
    long index = 0;
    std::vector<JacobiFormQExp> forms;
    long determinacy_bound = 0;  // caller-certified: forms are determined by classes with D <= this
    std::string provenance;
};

struct JRMParams {
    int weight = 2;
    long level = 1;
    long depth = 1;
    long det_max = 1;
    std::optional<SignVector> signs;  // Atkin-Lehner sector
    std::optional<int> fricke;        // Fricke-only sector
    Ring ring = Ring::rationals();
};

// Sparse homogeneous system in the slice-basis coordinates.
struct JRMSystem {
    JRMParams params;
    std::vector<std::size_t> offsets;  // first unknown of each slice; offsets.back() = #unknowns
    std::vector<std::map<std::size_t, Rational>> rows;
    std::size_t unknowns() const { return offsets.back(); }
};

struct JRMSpace {
    JRMParams params;
    std::vector<std::vector<Rational>> coords;  // echelonized nullspace basis in slice coordinates
    std::vector<ParaIndex> index_set;           // canonical in-scope keys
    std::vector<std::vector<Rational>> basis;   // coefficient vectors on index_set
    std::size_t dimension() const { return coords.size(); }
};

// Equations: each Jacobi class of each slice equals (with sign) the class of its canonical
// key, forced-zero classes vanish, and a(AL_l T) = eps_l a(T) (or the Fricke analogue)
// whenever both keys are in scope.
JRMSystem assemble_system(const JRMParams& params, const std::vector<JacobiBasis>& bases);
JRMSpace solve_jrm(const JRMParams& params, const std::vector<JacobiBasis>& bases);
// Number of equations violated by the coordinate vector x.
std::size_t residual(const JRMSystem& sys, const std::vector<Rational>& x);

// Slice coordinates of F; throws if a slice is outside its basis span.
std::vector<Rational> slice_coordinates(const ParamodularQExp& F, const JRMParams& params,
                                        const std::vector<JacobiBasis>& bases);
ParamodularQExp space_form(const JRMSpace& space, std::size_t i);

struct IdentifyResult {
    std::optional<std::vector<Rational>> coefficients;  // full vector on index_set when unique
    std::optional<std::vector<Rational>> combination;   // weights of the space basis
    std::size_t ambiguity = 0;                          // dimension of the matching subspace when not unique
};

// Throws std::runtime_error when no element of the space matches the partial data.
IdentifyResult identify_and_extend(const JRMSpace& space, const std::map<ParaIndex, Rational>& partial);

nlohmann::json to_json(const JRMSpace& s);

}  // namespace pmf
