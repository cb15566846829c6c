#pragma once

#include <stdexcept>
#include <string>

namespace windex {

// Base for all computation-level failures (CLI exit code 1).
class ComputationError : public std::runtime_error {
public:
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

class ModelMismatch : public ComputationError {
public:
    explicit ModelMismatch(const std::string& what) : ComputationError(what) {}
};

class ContextMismatch : public ComputationError {
public:
    explicit ContextMismatch(const std::string& what) : ComputationError(what) {}
};

class NotInvertible : public ComputationError {
public:
    explicit NotInvertible(const std::string& what) : ComputationError(what) {}
};

class NeumannDiverged : public ComputationError {
public:
    explicit NeumannDiverged(const std::string& what) : ComputationError(what) {}
};

class TruncationFailure : public ComputationError {
public:
    explicit TruncationFailure(const std::string& what) : ComputationError(what) {}
};

class ResolutionTooSmall : public ComputationError {
public:
    explicit ResolutionTooSmall(const std::string& what) : ComputationError(what) {}
};

class SelfAdjointnessViolation : public ComputationError {
public:
    explicit SelfAdjointnessViolation(const std::string& what) : ComputationError(what) {}
};

class InverseResidualTooLarge : public ComputationError {
public:
    explicit InverseResidualTooLarge(const std::string& what) : ComputationError(what) {}
};

class SymbolVanishes : public ComputationError {
public:
    explicit SymbolVanishes(const std::string& what) : ComputationError(what) {}
};

class DecompositionMismatch : public ComputationError {
public:
    explicit DecompositionMismatch(const std::string& what) : ComputationError(what) {}
};

// Structural/schema problems in inputs (CLI exit code 2).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace windex
