#pragma once

#include <stdexcept>
#include <string>

namespace hlb {

/// Argument outside the mathematical domain of an operation (m < 2, p < 2m, x ∉ [0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A work cap (enumeration size, grid size, construction arity) would be exceeded.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A certified enclosure could not reach the requested accuracy or verdict.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hlb
