#pragma once

#include <complex>

namespace p1dyn {

// Shared arithmetic contract for the three scalar domains (exact rational,
// cyclotomic, floating complex ball) plus the dual numbers used for exact
// directional derivatives. Each scalar header provides its specialization.
//
// Required members:
//   static constexpr bool is_exact;
//   static K zero();
//   static K one();
//   static bool is_zero(const K&);
//   static std::complex<double> to_complex(const K&);
template <class K>
struct scalar_traits;

enum class Domain { rational, cyclotomic, complex };

inline const char* domain_name(Domain d) {
    switch (d) {
        case Domain::rational: return "rational";
        case Domain::cyclotomic: return "cyclotomic";
        case Domain::complex: return "complex";
    }
    return "?";
}

}  // namespace p1dyn
