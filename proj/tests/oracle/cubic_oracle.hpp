#pragma once

#include <cstdint>
#include <vector>

namespace oracle {

struct OracleField {
  std::int64_t discriminant = 0;
  // a monic defining polynomial x^3 + p x^2 + q x + r
  std::int64_t p = 0, q = 0, r = 0;
};

/// Every cubic field with |D_K| <= X found among monic cubics whose
/// coefficients fit the Hunter box for X scaled by box_scale. Field
/// discriminants come from enlarging Z[theta] to the maximal order one
/// prime at a time; isomorphic fields are merged by comparing, for every
/// prime below 1000 not dividing the polynomial discriminants, how many
/// roots the defining polynomials have modulo that prime.
std::vector<OracleField> cubic_fields_by_polynomials(std::int64_t X, double box_scale = 1.0);

/// Discriminant of Z[theta] for the given monic cubic.
std::int64_t polynomial_discriminant(std::int64_t p, std::int64_t q, std::int64_t r);

/// Field discriminant of Q[x]/(x^3 + p x^2 + q x + r) for an irreducible cubic.
std::int64_t field_discriminant(std::int64_t p, std::int64_t q, std::int64_t r);

}  // namespace oracle
