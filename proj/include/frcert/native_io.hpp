#ifndef FRCERT_NATIVE_IO_HPP
#define FRCERT_NATIVE_IO_HPP

#include "frcert/instance.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <variant>

namespace frcert {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

inline constexpr int kNativeFormatVersion = 1;

/// Instance plus certificates in the line-oriented text format documented
/// in the README. Rationals are written as p or p/q; indices are 0-based.
struct NativeDocument {
  int version = kNativeFormatVersion;
  std::variant<DualInstance, PrimalInstance> instance;
  CertificateBundle bundle;

  bool is_dual() const { return std::holds_alternative<DualInstance>(instance); }
  const DualInstance& dual() const { return std::get<DualInstance>(instance); }
  const PrimalInstance& primal() const { return std::get<PrimalInstance>(instance); }
};

std::string write_native(const NativeDocument& doc);
NativeDocument read_native(const std::string& text);

bool same(const NativeDocument& x, const NativeDocument& y);

}  // namespace frcert

#endif  // FRCERT_NATIVE_IO_HPP
