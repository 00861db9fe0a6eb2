#pragma once

// JSON encodings shared by scenario files and reports.
//
//   complex          [re, im]
//   scalar literal   [re, im]
//   matrix literal   row-major array of n*n [re, im] pairs
//   function literal array of k [re, im] pairs
//   descriptor       {"kind": "scalar"} | {"kind": "matrix", "n": 2} | {"kind": "function", "k": 3}
//   EFunction        {atom_id: [re, im], ...} in atom order
//   Section          {"name": ..., "values": {atom_id: literal, ...}}

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bkalg/bkalg.hpp"

namespace bkalg::io {

using Json = nlohmann::ordered_json;

/// Malformed scenario content. The message starts with the JSON path.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, const std::string& what) : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

Json to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& path);

Json to_json(const FiberDescriptor& d);
FiberDescriptor descriptor_from_json(const Json& j, const std::string& path);

Json to_json(const FiberElement& x);
FiberElement fiber_from_json(const Json& j, const FiberDescriptor& d, const std::string& path);

Json to_json(const EFunction& a);
/// Real-valued functions are written as plain numbers.
Json real_to_json(const EFunction& a);
EFunction efunction_from_json(const Json& j, const SpacePtr& space, const std::string& path);

Json values_to_json(const Section& u);
Json to_json(const Section& u, const std::string& name);
Section section_from_json(const Json& values, const BundlePtr& bundle, const std::string& path);

Json atoms_to_json(const Idempotent& pi);

}  // namespace bkalg::io
