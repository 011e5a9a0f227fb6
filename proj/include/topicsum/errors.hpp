#ifndef TOPICSUM_ERRORS_HPP
#define TOPICSUM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace topicsum {

// Bad run configuration (missing paths, unknown signal names, ...). CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or inconsistent data (malformed files, contract violations). CLI exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A topic with no usable keywords. Pipeline stages skip the instance instead of aborting.
class EmptyTopicError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace topicsum

#endif
