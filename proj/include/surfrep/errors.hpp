#pragma once

#include <stdexcept>
#include <string>

namespace surfrep {

// Bad user-supplied data: unparsable words, malformed JSON, unknown symbols.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A request the engine explicitly does not support (e.g. the word problem
// on the (g,n) = (0,0) presentation).
class unsupported_error : public std::runtime_error {
 public:
  explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

// A mapping class or generator set failed its construction invariants.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Two computations that must agree by theorem disagreed.  Always a bug.
class consistency_error : public std::logic_error {
 public:
  explicit consistency_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace surfrep
