#ifndef GUARDED_ERRORS_HPP
#define GUARDED_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace guarded {

/// Input that does not have the shape or scope an operation expects.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unknown state, action, or definition name.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Positioned syntax, scope, or guardedness error from one of the parsers.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error("offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// A search or exploration budget was exhausted; nothing is silently
/// truncated.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hard caps for oracle enumeration and state-space exploration.
struct Limits {
  std::size_t max_carrier = 8;
  std::size_t max_set_card = 8;
  std::uint64_t max_search = std::uint64_t{1} << 20;
  std::size_t max_values = std::size_t{1} << 20;
  std::size_t max_states = 10000;

  /// Parses `key=value` pairs separated by commas, e.g.
  /// `carrier=6,search=65536,states=500`.  Unknown keys throw ShapeError.
  static Limits parse(const std::string& spec, Limits base);
};

inline Limits parse_limits(const std::string& spec) {
  return Limits::parse(spec, Limits{});
}

}  // namespace guarded

#endif  // GUARDED_ERRORS_HPP
