#include "argimpact/checkpoint.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "argimpact/error.hpp"
#include "argimpact/text.hpp"

namespace argimpact::checkpoint {

void write_tensor(std::ostream& os, const std::string& name,
                  const autodiff::Tensor& t) {
  os << "tensor " << name << ' ';
  const auto& shape = t.shape();
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << ',';
    os << shape[i];
  }
  os << '\n';
  const auto values = t.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ' ';
    os << text::format_double(values[i]);
  }
  os << '\n';
}

void write_params(std::ostream& os, const autodiff::NamedParams& params) {
  os << "tensors " << params.items.size() << '\n';
  for (const auto& [name, t] : params.items) write_tensor(os, name, t);
}

namespace {

autodiff::Tensor read_one(std::istream& is, std::string& name_out) {
  std::string header;
  if (!std::getline(is, header)) throw DataError("checkpoint: missing tensor header");
  std::istringstream hs(header);
  std::string tag, name, dims;
  hs >> tag >> name >> dims;
  if (tag != "tensor" || name.empty() || dims.empty()) {
    throw DataError("checkpoint: bad tensor header '" + header + "'");
  }

  autodiff::Shape shape;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= dims.size(); ++i) {
    if (i == dims.size() || dims[i] == ',') {
      shape.push_back(std::strtoull(dims.substr(start, i - start).c_str(), nullptr, 10));
      start = i + 1;
    }
  }

  std::string values_line;
  if (!std::getline(is, values_line)) {
    throw DataError("checkpoint: missing values for tensor " + name);
  }
  std::vector<double> values;
  values.reserve(autodiff::shape_size(shape));
  const char* p = values_line.c_str();
  char* end = nullptr;
  while (*p) {
    const double v = std::strtod(p, &end);
    if (end == p) break;
    values.push_back(v);
    p = end;
  }
  if (values.size() != autodiff::shape_size(shape)) {
    throw DataError("checkpoint: value count mismatch for tensor " + name);
  }
  name_out = name;
  return autodiff::Tensor::from_values(std::move(shape), std::move(values), true);
}

}  // namespace

autodiff::NamedParams read_params(std::istream& is, std::size_t count) {
  autodiff::NamedParams params;
  for (std::size_t i = 0; i < count; ++i) {
    std::string name;
    autodiff::Tensor t = read_one(is, name);
    params.add(name, t);
  }
  return params;
}

}  // namespace argimpact::checkpoint
