// DLF1 field files: 16-byte header, grid spec, rep tag, interleaved re/im f64.
#pragma once

#include <string>

#include "dlab/grid.hpp"

namespace dlab {

void write_dlf1(const std::string& path, const Field& f);
Field read_dlf1(const std::string& path);

}  // namespace dlab
