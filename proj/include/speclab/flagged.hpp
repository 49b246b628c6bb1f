#pragma once

#include <string>

namespace speclab {

// A value plus the completeness status of the search that produced it.
// certified == false means "verified within the search box only"; the note
// says which box. Combining results ANDs the flags.
template <class T>
struct Flagged {
  T value{};
  bool certified = true;
  std::string note;

  Flagged() = default;
  Flagged(T v) : value(std::move(v)) {}
  Flagged(T v, bool cert, std::string n = {})
      : value(std::move(v)), certified(cert), note(std::move(n)) {}

  void absorb_flag(const bool other_certified, const std::string& other_note) {
    if (!other_certified) {
      certified = false;
      if (note.empty()) note = other_note;
    }
  }
  template <class U>
  void absorb_flag(const Flagged<U>& other) {
    absorb_flag(other.certified, other.note);
  }
};

}  // namespace speclab
