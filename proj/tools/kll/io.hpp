#pragma once

// JSON <-> library type conversions shared by the subcommands.

#include "kll/finquot.hpp"
#include "kll/numfield.hpp"
#include "kll/orbifold.hpp"
#include "kll/taugraphs.hpp"
#include "kll/towers.hpp"
#include "kll/traceorders.hpp"
#include "kll/trivalent.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace kll::cli {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

Integer to_integer(const json& v);
Rational to_rational(const json& v);
std::int64_t to_small(const json& v);  // InvalidArgument past 64 bits

std::vector<Integer> to_poly(const json& v);
NumberField to_field(const json& v);
FieldElement to_element(const NumberField& k, const json& v);
Mat2 to_matrix(const NumberField& k, const json& v);

Word to_word(const Presentation& pres, const json& v);
Presentation to_presentation(const json& v);
OrbifoldData to_orbifold(const json& v);
TrivalentGraph to_trivalent(const json& v);
CosetGraph to_coset_graph(const json& v);
TowerRecord to_tower_record(const json& v);

/// Tuples [[a,b],[c,d],modulus,projective] share factor spaces across a job.
struct TupleSet {
    ProductSpace space;
    std::vector<ProductElement> elements;
};
MatrixSpace to_space(std::int64_t modulus, bool projective);
TupleSet to_tuples(const std::vector<json>& tuples);

// output
std::string str(const Integer& z);
std::string str(const Rational& q);
ojson enclosure(const Interval& i);
ojson prime_json(const PrimeIdeal& p);
ojson matrix_json(const Mat2& m);
ojson finite_json(const MatrixSpace& space, const Mat2F& m);

bool is_prime(std::int64_t n);

}  // namespace kll::cli
