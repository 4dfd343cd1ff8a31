#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mutkit/presentation.hpp"
#include "mutkit/representation.hpp"
#include "mutkit/triangulation.hpp"

namespace mutkit {

/// Problem found while reading a file; line 0 means "whole file".
struct Diagnostic {
  int line = 0;
  std::string message;
};

std::string format_diagnostics(const std::string& path, const std::vector<Diagnostic>& diagnostics);

enum class FileKind { Presentation, Representation, Mutation, Triangulation };

const char* to_string(FileKind kind);

/// Mutation file contents: the ambient representation, the surface data,
/// and optional Maskit coset samples (ambient words).
struct MutationFile {
  MutationSpec spec;
  std::vector<GroupWord> coset1;  ///< samples of G_1 - H
  std::vector<GroupWord> coset2;  ///< samples of G_2 - H
  std::vector<GroupWord> coset0;  ///< HNN: samples of the base group outside H
};

// Parsers append problems to `diagnostics` and return nullopt when any
// were found. The text must start with the matching header line.
std::optional<FinitePresentation> parse_presentation(const std::string& text, std::vector<Diagnostic>& diagnostics);
std::optional<MatrixRepresentation> parse_representation(const std::string& text,
                                                         std::vector<Diagnostic>& diagnostics,
                                                         LiftMode* lift = nullptr);
std::optional<MutationFile> parse_mutation(const std::string& text, std::vector<Diagnostic>& diagnostics);
std::optional<IdealTriangulation> parse_triangulation(const std::string& text,
                                                      std::vector<Diagnostic>& diagnostics);

std::string print_presentation(const FinitePresentation& p);
std::string print_representation(const MatrixRepresentation& rep, LiftMode lift = LiftMode::Projective);
std::string print_triangulation(const IdealTriangulation& tri);

/// Reads a file; throws ValidationError if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

// Loaders throw ValidationError carrying the formatted diagnostics.
FinitePresentation load_presentation(const std::filesystem::path& path);
MatrixRepresentation load_representation(const std::filesystem::path& path, LiftMode* lift = nullptr);
MutationFile load_mutation(const std::filesystem::path& path);
IdealTriangulation load_triangulation(const std::filesystem::path& path);

/// Kind named by the header line, or nullopt.
std::optional<FileKind> detect_kind(const std::string& text);

/// Schema validation of any supported file; empty when the file is fine.
/// Never throws.
std::vector<Diagnostic> validate_file(const std::filesystem::path& path);
std::vector<Diagnostic> validate_text(const std::string& text);

}  // namespace mutkit
