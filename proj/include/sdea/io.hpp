#pragma once

#include "sdea/types.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sdea::io {

// Dataset CSV: header `dmu,in:<name>...,out:<name>...`, one DMU per line.
// Throws ParseError with the offending row/column.
Dataset parse_dataset_csv(std::istream& in, const std::string& source = "<csv>");
Dataset read_dataset_csv(const std::string& path);

struct VariableCovariances {
  std::vector<CovarianceSpec> inputs;
  std::vector<CovarianceSpec> outputs;
};

// Covariance spec JSON:
//   {"inputs": {<name>|"all": spec, ...}, "outputs": {...}}
//   spec = {"kind": "zero"} | {"kind": "scalar", "c": x}
//        | {"kind": "diagonal", "var": [...]} | {"kind": "full", "matrix": [[...], ...]}
// Named entries override "all"; anything not mentioned is zero. Unknown
// keys, names or kinds are ParseErrors.
VariableCovariances parse_covariance_spec(const std::string& json_text, const Dataset& d);

// Expands every spec to its n x n matrix (ConfigError on a size mismatch).
void apply_covariances(Dataset& d, const VariableCovariances& cov);

// Every output gets ScalarIdentity(c), inputs stay as they are.
Dataset with_output_noise(Dataset d, double c);

// Reads the CSV, applies the optional covariance file and validates.
// Validation failures are ConfigErrors naming the CSV cell.
Dataset load_dataset(const std::string& data_path,
                     const std::optional<std::string>& cov_path = std::nullopt);

}  // namespace sdea::io
