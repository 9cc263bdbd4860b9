#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "metriclust/types.hpp"

// Batch distance kernels: one center against a block of points.
//
// Points are read column-major so that SIMD lanes run across points, not
// across coordinates (d is 2..20 here, far too short to fill a register).
// Every variant evaluates each lane with the same operation sequence as the
// scalar reference, so results are bit-identical across ISAs. The build
// disables floating-point contraction to keep that true.
namespace metriclust::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

/// Column j of the block starts at base + j * stride and holds n values.
struct Columns {
    const double* base = nullptr;
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t stride = 0;
};

using CenterFn = void (*)(Columns pts, const double* center, double* out);
using MinkowskiFn = void (*)(Columns pts, const double* center, double p, double* out);
using QuadFormFn = void (*)(Columns pts, const double* center, const double* inv, double* out);

struct KernelTable {
    Isa isa;
    CenterFn sq_euclidean;
    CenterFn euclidean;
    CenterFn manhattan;
    CenterFn chebyshev;
    MinkowskiFn minkowski;
    /// (x - c)^T inv (x - c) with inv row-major d x d. Not clamped.
    QuadFormFn mahalanobis_sq;
};

const KernelTable& scalar_table();
bool isa_available(Isa isa);
/// Throws std::invalid_argument when the ISA is not compiled in or not supported by this CPU.
const KernelTable& table_for(Isa isa);

/// Kernel table used by the library. Picks the best ISA the CPU supports;
/// METRICLUST_ISA=scalar|avx2|neon in the environment overrides it.
const KernelTable& active();
void force_isa(std::optional<Isa> isa);

/// Column-major copy of a DataMatrix.
class ColumnStore {
public:
    explicit ColumnStore(const DataMatrix& data);

    std::size_t rows() const noexcept { return n_; }
    std::size_t dims() const noexcept { return d_; }
    Columns all() const { return block(0, n_); }
    Columns block(std::size_t begin, std::size_t count) const {
        return {values_.data() + begin, count, d_, n_};
    }

private:
    std::size_t n_ = 0;
    std::size_t d_ = 0;
    std::vector<double> values_;
};

// Per-ISA tables, defined in their own translation units. Return nullptr when
// the variant is not compiled for this target.
namespace detail {
const KernelTable* avx2_table();
const KernelTable* neon_table();
}  // namespace detail

}  // namespace metriclust::kernels
