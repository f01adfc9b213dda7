#include "catwork/base.hpp"

#include <cstdlib>

namespace catwork {

const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::AssocViolation: return "AssocViolation";
    case ErrKind::UnitViolation: return "UnitViolation";
    case ErrKind::TypeMismatch: return "TypeMismatch";
    case ErrKind::SizeBoundExceeded: return "SizeBoundExceeded";
    case ErrKind::DimensionBoundExceeded: return "DimensionBoundExceeded";
    case ErrKind::UnknownObject: return "UnknownObject";
    case ErrKind::NotAFibration: return "NotAFibration";
    case ErrKind::NotACocone: return "NotACocone";
    case ErrKind::NotRelative: return "NotRelative";
    case ErrKind::CyclicOneSkeleton: return "CyclicOneSkeleton";
    case ErrKind::CoherenceViolation: return "CoherenceViolation";
    case ErrKind::EnrichedAssocViolation: return "EnrichedAssocViolation";
    case ErrKind::DomainMismatch: return "DomainMismatch";
    case ErrKind::UnknownSuite: return "UnknownSuite";
    case ErrKind::MalformedWitness: return "MalformedWitness";
    case ErrKind::BoundExceeded: return "BoundExceeded";
    case ErrKind::Internal: return "Internal";
  }
  return "Unknown";
}

Limits& Limits::global() {
  static Limits l = [] {
    Limits init;
    if (const char* env = std::getenv("WORKBENCH_MAX_CELLS")) {
      long v = std::strtol(env, nullptr, 10);
      if (v > 0) {
        init.max_cells = static_cast<int>(v);
        init.max_morphisms = static_cast<int>(v);
        init.max_objects = static_cast<int>(v);
      }
    }
    return init;
  }();
  return l;
}

void ensure_cat_size(int n_obj, int n_mor) {
  const Limits& l = Limits::global();
  if (n_obj > l.max_objects || n_mor > l.max_morphisms) {
    throw CatError(ErrKind::SizeBoundExceeded,
                   "category too large: " + std::to_string(n_obj) + " objects, " +
                       std::to_string(n_mor) + " morphisms",
                   {{"objects", n_obj}, {"morphisms", n_mor}});
  }
}

void ensure_cells(long long n) {
  if (n > Limits::global().max_cells) {
    throw CatError(ErrKind::SizeBoundExceeded, "cell budget exceeded: " + std::to_string(n),
                   {{"cells", n}});
  }
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::uint64_t json_hash(const json& j) { return fnv1a(j.dump()); }

}  // namespace catwork
