#ifndef CATWORK_BASE_HPP
#define CATWORK_BASE_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace catwork {

using json = nlohmann::json;

enum class ErrKind {
  AssocViolation,
  UnitViolation,
  TypeMismatch,
  SizeBoundExceeded,
  DimensionBoundExceeded,
  UnknownObject,
  NotAFibration,
  NotACocone,
  NotRelative,
  CyclicOneSkeleton,
  CoherenceViolation,
  EnrichedAssocViolation,
  DomainMismatch,
  UnknownSuite,
  MalformedWitness,
  BoundExceeded,
  Internal,
};

const char* err_kind_name(ErrKind k);

class CatError : public std::runtime_error {
 public:
  ErrKind kind;
  json detail;
  CatError(ErrKind k, const std::string& msg, json d = json::object())
      : std::runtime_error(std::string(err_kind_name(k)) + ": " + msg),
        kind(k),
        detail(std::move(d)) {}
};

// Global size caps. All constructions in this library stay tiny; the caps
// exist so that a bad instance fails fast instead of exploding.
struct Limits {
  int max_objects = 64;
  int max_morphisms = 512;
  int max_cells = 4096;  // total cells across the levels of one complex
  static Limits& global();
};

void ensure_cat_size(int n_obj, int n_mor);
void ensure_cells(long long n);

// Deterministic RNG. mt19937_64 output is fully specified, and we avoid
// std::uniform_int_distribution since its mapping is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t raw() { return gen_(); }
  // uniform in [0, n)
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (gen_() & 1u) != 0; }

 private:
  std::mt19937_64 gen_;
};

// FNV-1a, used for content hashes of instances in reports.
std::uint64_t fnv1a(const std::string& s);
std::string hash_hex(std::uint64_t h);
std::uint64_t json_hash(const json& j);

}  // namespace catwork

#endif
