#pragma once

#include <iosfwd>
#include <string>

#include "argimpact/autodiff.hpp"

namespace argimpact::checkpoint {

/// Text tensor container. One block per tensor:
///   tensor <name> <d0[,d1]>
///   v0 v1 ... (one line, %.17g so values round-trip exactly)
void write_tensor(std::ostream& os, const std::string& name,
                  const autodiff::Tensor& t);

void write_params(std::ostream& os, const autodiff::NamedParams& params);

/// Reads `count` tensor blocks. Throws DataError on malformed input.
autodiff::NamedParams read_params(std::istream& is, std::size_t count);

}  // namespace argimpact::checkpoint
