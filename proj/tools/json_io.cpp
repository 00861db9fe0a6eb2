#include "json_io.hpp"

#include <cmath>

namespace bkalg::io {

namespace {

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path, "number is not finite");
  return v;
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ParseError(path, "expected a complex number as [re, im]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

Json to_json(const FiberDescriptor& d) {
  Json j;
  j["kind"] = to_string(d.kind);
  if (d.kind == FiberKind::matrix) j["n"] = d.dim;
  if (d.kind == FiberKind::function) j["k"] = d.dim;
  return j;
}

FiberDescriptor descriptor_from_json(const Json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError(path, "fiber descriptor needs a string 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  auto dim = [&](const char* key) -> std::size_t {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1)
      throw ParseError(path + "." + key, std::string("expected a positive integer"));
    return j[key].get<std::size_t>();
  };
  try {
    if (kind == "scalar") return FiberDescriptor::scalar();
    if (kind == "matrix") return FiberDescriptor::matrix(dim("n"));
    if (kind == "function") return FiberDescriptor::function(dim("k"));
  } catch (const ShapeError& e) {
    throw ParseError(path, e.what());
  }
  throw ParseError(path + ".kind", "unknown fiber kind '" + kind + "'");
}

Json to_json(const FiberElement& x) {
  if (x.descriptor().kind == FiberKind::scalar) return to_json(x[0]);
  Json arr = Json::array();
  for (Complex z : x.data()) arr.push_back(to_json(z));
  return arr;
}

FiberElement fiber_from_json(const Json& j, const FiberDescriptor& d, const std::string& path) {
  if (d.kind == FiberKind::scalar) return FiberElement::scalar(complex_from_json(j, path));
  if (!j.is_array() || j.size() != d.data_size())
    throw ParseError(path, d.to_string() + " literal needs " + std::to_string(d.data_size()) + " [re, im] pairs" +
                               (j.is_array() ? ", got " + std::to_string(j.size()) : ""));
  std::vector<Complex> data;
  data.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) data.push_back(complex_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return FiberElement(d, std::move(data));
}

Json to_json(const EFunction& a) {
  Json j = Json::object();
  for (std::size_t i = 0; i < a.size(); ++i) j[a.space()->id(i)] = to_json(a[i]);
  return j;
}

Json real_to_json(const EFunction& a) {
  Json j = Json::object();
  for (std::size_t i = 0; i < a.size(); ++i) j[a.space()->id(i)] = a[i].real();
  return j;
}

EFunction efunction_from_json(const Json& j, const SpacePtr& space, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object {atom_id: [re, im]}");
  std::vector<Complex> v(space->size());
  for (std::size_t i = 0; i < space->size(); ++i) {
    const std::string& id = space->id(i);
    if (!j.contains(id)) throw ParseError(path, "missing value for atom '" + id + "'");
    const Json& z = j[id];
    v[i] = z.is_number() ? Complex(number(z, path + "." + id), 0.0) : complex_from_json(z, path + "." + id);
  }
  for (const auto& [key, _] : j.items())
    if (!space->index_of(key)) throw ParseError(path + "." + key, "unknown atom");
  return EFunction(space, std::move(v));
}

Json values_to_json(const Section& u) {
  Json j = Json::object();
  for (std::size_t i = 0; i < u.size(); ++i) j[u.space()->id(i)] = to_json(u[i]);
  return j;
}

Json to_json(const Section& u, const std::string& name) {
  Json j;
  j["name"] = name;
  j["values"] = values_to_json(u);
  return j;
}

Section section_from_json(const Json& values, const BundlePtr& bundle, const std::string& path) {
  if (!values.is_object()) throw ParseError(path, "expected an object {atom_id: literal}");
  const auto& space = *bundle->space();
  std::vector<FiberElement> out;
  out.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const std::string& id = space.id(i);
    const std::string where = path + " atom '" + id + "'";
    if (!values.contains(id)) throw ParseError(where, "missing fiber value");
    out.push_back(fiber_from_json(values[id], bundle->fiber(i), where));
  }
  for (const auto& [key, _] : values.items())
    if (!space.index_of(key)) throw ParseError(path + " atom '" + key + "'", "unknown atom");
  return Section(bundle, std::move(out));
}

Json atoms_to_json(const Idempotent& pi) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (pi.contains(i)) arr.push_back(pi.space()->id(i));
  return arr;
}

}  // namespace bkalg::io
