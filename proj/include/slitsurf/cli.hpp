#pragma once

namespace slitsurf {

// 0 success, 1 usage error, 2 geometry/invariant violation
int cli_main(int argc, const char* const* argv);

}  // namespace slitsurf
