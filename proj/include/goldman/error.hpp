#pragma once

#include <stdexcept>
#include <string>

namespace goldman {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GOLDMAN_ERROR(Name)          \
  class Name : public Error {        \
   public:                           \
    using Error::Error;              \
  }

GOLDMAN_ERROR(UnknownSymbol);
GOLDMAN_ERROR(EmptyBase);
GOLDMAN_ERROR(NotCyclicallyReduced);
GOLDMAN_ERROR(WrongAlphabet);
GOLDMAN_ERROR(TooShort);
GOLDMAN_ERROR(NotInSubgroup);
GOLDMAN_ERROR(MixedContext);
GOLDMAN_ERROR(UnknownName);
GOLDMAN_ERROR(BoundsTooLarge);
GOLDMAN_ERROR(ParseError);
GOLDMAN_ERROR(InvalidContext);

#undef GOLDMAN_ERROR

}  // namespace goldman
