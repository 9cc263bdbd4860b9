#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "metriclust/kernels.hpp"

namespace metriclust::kernels {

namespace {

bool cpu_supports(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
            return detail::avx2_table() != nullptr && __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::neon:
            return detail::neon_table() != nullptr;
    }
    return false;
}

const KernelTable* pick_default() {
    if (const char* env = std::getenv("METRICLUST_ISA"); env != nullptr && *env != '\0') {
        const auto requested = parse_isa(env);
        if (!requested) {
            throw std::invalid_argument(std::string("METRICLUST_ISA: unknown ISA '") + env + "'");
        }
        return &table_for(*requested);
    }
    if (cpu_supports(Isa::avx2)) return detail::avx2_table();
    if (cpu_supports(Isa::neon)) return detail::neon_table();
    return &scalar_table();
}

std::atomic<const KernelTable*> g_forced{nullptr};

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2") return Isa::avx2;
    if (name == "neon") return Isa::neon;
    return std::nullopt;
}

bool isa_available(Isa isa) { return cpu_supports(isa); }

const KernelTable& table_for(Isa isa) {
    if (!cpu_supports(isa)) {
        throw std::invalid_argument("kernel ISA not available: " + std::string(isa_name(isa)));
    }
    switch (isa) {
        case Isa::avx2: return *detail::avx2_table();
        case Isa::neon: return *detail::neon_table();
        case Isa::scalar: break;
    }
    return scalar_table();
}

const KernelTable& active() {
    if (const KernelTable* forced = g_forced.load(std::memory_order_acquire)) return *forced;
    static const KernelTable* const chosen = pick_default();
    return *chosen;
}

void force_isa(std::optional<Isa> isa) {
    g_forced.store(isa ? &table_for(*isa) : nullptr, std::memory_order_release);
}

ColumnStore::ColumnStore(const DataMatrix& data)
    : n_(data.rows()), d_(data.cols()), values_(data.rows() * data.cols()) {
    for (std::size_t i = 0; i < n_; ++i) {
        const auto row = data.row(i);
        for (std::size_t j = 0; j < d_; ++j) values_[j * n_ + i] = row[j];
    }
}

}  // namespace metriclust::kernels
