#pragma once

#include <vector>

#include "zetadiff/bigreal.hpp"

namespace zetadiff::detail {

/// Integer zeta values are produced in aligned blocks of this many arguments,
/// starting at 2. Powers (j+1)^(-s) are formed once at the block start and then
/// divided down, so every value depends only on its block, never on the caller.
inline constexpr long kZetaBlock = 16;

inline long zeta_block_start(long ell) { return 2 + ((ell - 2) / kZetaBlock) * kZetaBlock; }

/// zeta(s) for s in [s_begin, s_end); s_begin must be block aligned and the
/// range must lie inside one block.
std::vector<BigReal> zeta_block(long s_begin, long s_end, Bits prec);

}  // namespace zetadiff::detail
