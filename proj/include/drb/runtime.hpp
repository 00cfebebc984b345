#pragma once

// Process-wide allocator setting for the executables.

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace drb {

// Large linear combinations are built and freed in bulk. With glibc fastbins
// the freed nodes stay unmerged and later allocations slow down by an order
// of magnitude, so fastbins are turned off.
inline void configure_allocator() {
#if defined(__GLIBC__)
    mallopt(M_MXFAST, 0);
#endif
}

}  // namespace drb
