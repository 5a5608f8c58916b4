#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fslib/core.hpp"

namespace fslib {

using ParamMap = std::map<std::string, std::string>;

/// Names of the built-in methods, in catalog order.
const std::vector<std::string>& method_names();

/// Type, class and complexity tag of a built-in method, with empty params.
/// Throws ArgumentError for unknown names.
MethodDescriptor describe_method(const std::string& name);

std::vector<MethodDescriptor> list_methods();

/// Parameter keys a method accepts through run_method.
const std::vector<std::string>& method_param_keys(const std::string& name);

/// Validates params (unknown keys are an error), runs the method and returns
/// its ranking with the effective parameters recorded in the descriptor.
/// Supervised methods require labels.
FeatureRanking run_method(const std::string& name, const DataMatrix& data, const LabelVector* labels,
                          const ParamMap& params = {}, std::int64_t seed = 0);

/// Parses "k=v,k=v" into a map; throws ArgumentError on malformed pairs.
ParamMap parse_param_list(const std::string& text);

/// Shortest round-trip decimal text for a double.
std::string format_number(double value);

}  // namespace fslib
