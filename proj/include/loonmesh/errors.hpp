#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace loonmesh {

// Fewer than 3 distinct points, or all points collinear.
struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicateNode : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownNode : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A consecutive node pair in a claimed path has no edge.
struct NotAPath : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scenario failed semantic validation. event_index is -1 for faults in the
// config itself (params, initial nodes) rather than in a specific event.
class InvalidScenario : public std::runtime_error {
 public:
  InvalidScenario(int event_index, const std::string& what)
      : std::runtime_error(what), event_index_(event_index) {}
  int event_index() const { return event_index_; }

 private:
  int event_index_;
};

// A JSON document violates the scenario schema. path is a JSON pointer to
// the first offending element.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& what)
      : std::runtime_error(what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace loonmesh
