#pragma once

#include <string>

#include "json.hpp"

#include "hoeffding/distribution.hpp"
#include "hoeffding/hilbert.hpp"

namespace hoeffding {

using OrderedJson = nlohmann::ordered_json;

// One input file carries the law and the model table together. The model
// is given on the full grid (row-major, last input fastest) so that
// zero-probability cells still have values, as the independent copy of
// the law needs them.
struct ProblemInput {
  JointPmf pmf;
  Vector model;
};

ProblemInput parse_input(const std::string& text);
ProblemInput load_input(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Fixed-format serialization: floating-point values with 17 significant
// digits, two-space indentation, inline arrays unless they contain
// objects, LF line endings. Byte-identical output for identical input.
std::string dump_json(const OrderedJson& value);

std::string format_double(double v);  // %.17g; folds -0 to 0

OrderedJson subset_json(SubsetMask a);
OrderedJson vector_json(const Vector& v);

// CSV with a header row/column of quoted subset labels, ',' delimiter,
// '.' decimal separator, LF line endings.
std::string feshchenko_csv(const FeshchenkoMatrix& delta);

}  // namespace hoeffding
