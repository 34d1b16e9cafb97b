#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "netnorm/algorithms.hpp"
#include "netnorm/errors.hpp"
#include "netnorm/model.hpp"

namespace netnorm::io {

using Json = nlohmann::ordered_json;

/// Malformed instance file; the message names the offending field path
/// (and the line for JSON syntax errors).
class InputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// {"dim": d, "entries": [[re, im], ...]} for square matrices,
/// {"rows": r, "cols": c, "entries": ...} otherwise; row-major.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, const std::string& where);

Json descriptor_to_json(const BanachDescriptor& desc);
BanachDescriptor descriptor_from_json(const Json& j, const std::string& where);

std::string domain_name(InputBall ball);
InputBall domain_from_name(const std::string& name, const std::string& where);

struct Instance {
  std::string kind;  // locc, multiparty, channel, matrix, general, injective
  std::variant<OneWayLOCC, MultipartiteLOCC, EBChannel, CMatrix, GeneralDecomposition, InjectiveProblem> value;
};

Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& inst);

/// Parses an instance document; syntax errors report the line number.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

/// Exact structural equality (matrices compared entry by entry).
bool same_instance(const Instance& a, const Instance& b);

Json report_to_json(const EstimateReport& rep);

}  // namespace netnorm::io
