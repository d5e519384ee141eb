#pragma once

#include <stdexcept>
#include <string>

namespace hyperspec {

enum class ErrorCode {
  wrong_edge_size,
  vertex_out_of_range,
  repeated_vertex_in_edge,
  invalid_parameters,
  rank_too_small,
  vertex_not_in_edge,
  target_already_in_edge,
  edge_not_found,
  would_create_multiple_edge,
  parse_error,
  invalid_rank,
  negative_input,
  domain_error,
  not_applicable,
  dimension_mismatch,
  no_edges,
  not_converged,
  not_connected,
  not_subnormal,
  degree_too_small,
  link_not_normal,
  base_not_normal,
  weight_overflow,
  space_too_large,
  io_error,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// C API can map it onto a status value without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures remember the offending 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace hyperspec
