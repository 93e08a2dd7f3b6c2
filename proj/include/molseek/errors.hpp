//
// Project MolSeek - Copyright 2026 MolSeek Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLSEEK_ERRORS_HPP_
#define MOLSEEK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace molseek {

// Base class for everything this library throws. Subcommands and the
// reward module catch this to decide "invalid input" without caring
// which stage rejected it.
class Error: public std::runtime_error {
public:
  explicit Error(const std::string &what): std::runtime_error(what) { }
};

// SMILES text that violates the grammar (bad token, stray character,
// conflicting ring-bond orders, inconsistent cis/trans marks, ...).
class SyntaxError: public Error {
public:
  explicit SyntaxError(const std::string &what): Error(what) { }
};

// A ring-closure digit was opened and never matched.
class UnclosedRingError: public SyntaxError {
public:
  explicit UnclosedRingError(const std::string &what): SyntaxError(what) { }
};

// '(' without matching ')' or vice versa.
class UnclosedBranchError: public SyntaxError {
public:
  explicit UnclosedBranchError(const std::string &what): SyntaxError(what) { }
};

// An atom's bond order sum plus hydrogens exceeds every allowed valence
// for its element/charge.
class ValenceError: public Error {
public:
  explicit ValenceError(const std::string &what): Error(what) { }
};

// Aromatic input that admits no kekule assignment.
class AromaticityError: public Error {
public:
  explicit AromaticityError(const std::string &what): Error(what) { }
};

// Feature present in the molecule that the SMILES writer cannot express.
class UnsupportedFeatureError: public Error {
public:
  explicit UnsupportedFeatureError(const std::string &what): Error(what) { }
};

// Molecule too large for the brute-force isomorphism oracle.
class SizeLimitError: public Error {
public:
  explicit SizeLimitError(const std::string &what): Error(what) { }
};

// 2D layout failed to resolve atom overlaps within the retry budget.
class LayoutOverflowError: public Error {
public:
  explicit LayoutOverflowError(const std::string &what): Error(what) { }
};

// Corpus build asked for more samples than a pool provides.
class InsufficientPoolError: public Error {
public:
  explicit InsufficientPoolError(const std::string &what): Error(what) { }
};

// Prediction file carries the same id twice.
class DuplicatePredictionError: public Error {
public:
  explicit DuplicatePredictionError(const std::string &what): Error(what) { }
};

// Malformed input file (manifest, prediction file, pool file, image).
class IoError: public Error {
public:
  explicit IoError(const std::string &what): Error(what) { }
};

}  // namespace molseek

#endif  // MOLSEEK_ERRORS_HPP_
