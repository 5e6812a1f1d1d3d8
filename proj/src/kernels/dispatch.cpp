#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"
#include "skorokhod/kernels.hpp"

namespace skorokhod::kernels {

namespace {

Isa detect() noexcept {
  if (const char* forced = std::getenv("SKOROKHOD_ISA")) {
    const std::string_view name(forced);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (name == isa_name(isa) && isa_available(isa)) return isa;
    }
  }
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

void require(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel variant not available: " + std::string(isa_name(isa)));
  }
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(SKOROKHOD_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(SKOROKHOD_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept {
  static const Isa isa = detect();
  return isa;
}

double superlevel_mass(Isa isa, std::span<const double> g, std::span<const double> w, double level) {
  if (w.empty()) return 0.0;
  if (g.size() != w.size() + 1) throw std::invalid_argument("superlevel_mass: need one more level value than weights");
  require(isa);
  switch (isa) {
#if defined(SKOROKHOD_HAVE_AVX2)
    case Isa::avx2: return detail::superlevel_mass_avx2(g.data(), w.data(), w.size(), level);
#endif
#if defined(SKOROKHOD_HAVE_NEON)
    case Isa::neon: return detail::superlevel_mass_neon(g.data(), w.data(), w.size(), level);
#endif
    default: return detail::superlevel_mass_scalar(g.data(), w.data(), w.size(), level);
  }
}

double superlevel_mass(std::span<const double> g, std::span<const double> w, double level) {
  return superlevel_mass(active_isa(), g, w, level);
}

double stieltjes_trapezoid(Isa isa, std::span<const double> f, std::span<const double> m) {
  if (f.size() != m.size()) throw std::invalid_argument("stieltjes_trapezoid: size mismatch");
  if (f.size() < 2) return 0.0;
  require(isa);
  const std::size_t n = f.size() - 1;
  switch (isa) {
#if defined(SKOROKHOD_HAVE_AVX2)
    case Isa::avx2: return detail::stieltjes_trapezoid_avx2(f.data(), m.data(), n);
#endif
#if defined(SKOROKHOD_HAVE_NEON)
    case Isa::neon: return detail::stieltjes_trapezoid_neon(f.data(), m.data(), n);
#endif
    default: return detail::stieltjes_trapezoid_scalar(f.data(), m.data(), n);
  }
}

double stieltjes_trapezoid(std::span<const double> f, std::span<const double> m) {
  return stieltjes_trapezoid(active_isa(), f, m);
}

}  // namespace skorokhod::kernels
