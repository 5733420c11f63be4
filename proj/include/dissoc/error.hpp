// Copyright 2026 The dissoc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace dissoc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed query, catalog, or configuration text.
class ParseError : public Error { using Error::Error; };

/// A query or database that does not agree with its catalog.
class SchemaError : public Error { using Error::Error; };

/// A relation symbol occurs more than once in a query.
class SelfJoinError : public SchemaError { using SchemaError::SchemaError; };

/// Invalid tuple data (probability out of range, arity mismatch, ...).
class DataError : public Error { using Error::Error; };

/// A dissociation adds a variable an atom already has, or has the wrong length.
class InvalidDissociation : public Error { using Error::Error; };

/// A dissociated query that is not hierarchical has no safe plan.
class NotSafeError : public Error { using Error::Error; };

/// A plan that does not compute the query it is paired with.
class PlanQueryMismatch : public Error { using Error::Error; };

/// A substitution that does not map a dissociated formula back onto the original.
class InvalidSubstitution : public Error { using Error::Error; };

/// Some computation exceeded its configured budget.
class ResourceLimitError : public Error { using Error::Error; };

class LineageTooLarge : public ResourceLimitError { using ResourceLimitError::ResourceLimitError; };
class OracleTooLarge : public ResourceLimitError { using ResourceLimitError::ResourceLimitError; };

}
