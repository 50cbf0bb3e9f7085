#include <cstdlib>
#include <stdexcept>
#include <string>

#include "aniso/simd/kernels.hpp"

namespace aniso::simd {

namespace {

bool cpu_has(Isa isa) {
    switch (isa) {
    case Isa::Scalar:
        return true;
    case Isa::Avx2:
#if defined(ANISO_HAVE_AVX2)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    case Isa::Neon:
#if defined(ANISO_HAVE_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

const Kernels& select() {
    if (const char* env = std::getenv("ANISO_SIMD")) {
        const std::string want(env);
        for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
            if (want == isa_name(isa) && cpu_has(isa)) return kernels_for(isa);
    }
    if (cpu_has(Isa::Avx2)) return kernels_for(Isa::Avx2);
    if (cpu_has(Isa::Neon)) return kernels_for(Isa::Neon);
    return detail::scalar_kernels();
}

} // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
    case Isa::Scalar:
        return "scalar";
    case Isa::Avx2:
        return "avx2";
    case Isa::Neon:
        return "neon";
    }
    return "unknown";
}

bool available(Isa isa) { return cpu_has(isa); }

const Kernels& kernels_for(Isa isa) {
    if (!cpu_has(isa)) throw std::invalid_argument("kernel set not available: " + std::string(isa_name(isa)));
    switch (isa) {
#if defined(ANISO_HAVE_AVX2)
    case Isa::Avx2:
        return detail::avx2_kernels();
#endif
#if defined(ANISO_HAVE_NEON)
    case Isa::Neon:
        return detail::neon_kernels();
#endif
    default:
        return detail::scalar_kernels();
    }
}

const Kernels& kernels() {
    static const Kernels& active = select();
    return active;
}

} // namespace aniso::simd
