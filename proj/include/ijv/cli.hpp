//
// cli.hpp
//
// Command-line front end: phantom generation, video segmentation and
// evaluation against truth. Exit codes: 0 success, 1 usage error,
// 2 data error.
//

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ijv::cli {

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ijv::cli
