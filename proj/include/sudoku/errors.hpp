#pragma once

#include <stdexcept>
#include <string>

namespace sudoku {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedInput : Error {
  using Error::Error;
};

struct ConflictedPuzzle : Error {
  using Error::Error;
};

struct IncompleteGrid : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct FileNotFound : IoError {
  using IoError::IoError;
};

struct MalformedLine : Error {
  MalformedLine(const std::string& what, int line) : Error(what), line_number(line) {}
  int line_number;
};

}  // namespace sudoku
