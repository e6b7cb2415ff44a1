//
// Copyright 2026 The perturbkit Authors
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
//

#include "perturbkit/corpus.h"

#include <fstream>
#include <string>
#include <utility>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "jsonl.h"
#include "perturbkit/status.h"
#include "perturbkit/text.h"

namespace perturbkit {
namespace {

using internal::Json;

constexpr int kMaxCleaningPasses = 16;

size_t FindUrlStart(std::string_view s, size_t from) {
  static constexpr std::string_view kPrefixes[] = {"http://", "https://",
                                                   "www."};
  size_t best = std::string_view::npos;
  for (std::string_view prefix : kPrefixes) {
    for (size_t i = from; i + prefix.size() <= s.size(); ++i) {
      if (i >= best) break;
      if (absl::EqualsIgnoreCase(AbslView(s.substr(i, prefix.size())),
                                AbslView(prefix))) {
        best = i;
        break;
      }
    }
  }
  return best;
}

std::string StripUrls(std::string_view s) {
  std::string out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t start = FindUrlStart(s, pos);
    if (start == std::string_view::npos) {
      out.append(s.substr(pos));
      break;
    }
    out.append(s.substr(pos, start - pos));
    size_t end = start;
    while (end < s.size() && !IsAsciiSpace(s[end])) ++end;
    out.push_back(' ');
    pos = end;
  }
  return out;
}

bool IsNumberToken(std::string_view token) {
  bool has_digit = false;
  for (char c : token) {
    if (IsAsciiDigit(c)) {
      has_digit = true;
    } else if (c != '.' && c != ',' && c != ':' && c != '/' && c != '+' &&
               c != '-' && c != '%' && c != '$') {
      return false;
    }
  }
  return has_digit;
}

std::string StripNumbers(std::string_view s) {
  std::string out;
  size_t i = 0;
  while (i < s.size()) {
    if (IsAsciiSpace(s[i])) {
      out.push_back(s[i++]);
      continue;
    }
    size_t start = i;
    while (i < s.size() && !IsAsciiSpace(s[i])) ++i;
    std::string_view token = s.substr(start, i - start);
    if (!IsNumberToken(token)) out.append(token);
  }
  return out;
}

bool IsWordSeparator(char32_t cp) {
  return cp == U'-' || cp == U'/' || cp == U'_' || cp == U'–' ||
         cp == U'—' || cp == U' ';
}

std::string FilterCharacters(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : DecodeUtf8(s)) {
    if (cp < 0x80) {
      const char c = static_cast<char>(cp);
      if (IsAsciiLetter(c) || c == '\'' || IsSentencePunctuation(c)) {
        out.push_back(c);
        continue;
      }
      if (IsAsciiSpace(c) || IsWordSeparator(cp)) out.push_back(' ');
      continue;
    }
    if (cp == U'’' || cp == U'‘') {
      out.push_back('\'');
    } else if (IsWordSeparator(cp)) {
      out.push_back(' ');
    }
  }
  return out;
}

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (IsAsciiSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string CleaningPass(std::string_view s) {
  return CollapseWhitespace(FilterCharacters(StripNumbers(StripUrls(s))));
}

}  // namespace

absl::StatusOr<std::string> CleanText(std::string_view raw) {
  std::string current = CleaningPass(raw);
  for (int pass = 1; pass < kMaxCleaningPasses; ++pass) {
    std::string next = CleaningPass(current);
    if (next == current) break;
    current = std::move(next);
  }
  if (current.empty()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "empty-after-clean");
  }
  return current;
}

std::vector<std::string> AlphabeticTokens(std::string_view cleaned) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    size_t b = 0;
    size_t e = current.size();
    while (b < e && current[b] == '\'') ++b;
    while (e > b && current[e - 1] == '\'') --e;
    if (e > b) tokens.push_back(AsciiLower(current.substr(b, e - b)));
    current.clear();
  };
  for (char c : cleaned) {
    if (IsAsciiLetter(c) || c == '\'') {
      current.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

bool IsStandardEnglish(std::string_view cleaned,
                       const Dictionary& dictionary) {
  for (const std::string& token : AlphabeticTokens(cleaned)) {
    if (dictionary.Contains(token)) continue;
    if (token.find('\'') == std::string::npos) return false;
    size_t start = 0;
    while (start <= token.size()) {
      size_t end = token.find('\'', start);
      if (end == std::string::npos) end = token.size();
      std::string_view piece = std::string_view(token).substr(start,
                                                              end - start);
      if (!piece.empty() && !dictionary.Contains(piece)) return false;
      start = end + 1;
    }
  }
  return true;
}

absl::StatusOr<FilterResult> FilterCorpus(
    const std::vector<SentenceRecord>& records, const Dictionary& dictionary) {
  if (dictionary.empty()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "empty-dictionary");
  }
  FilterResult result;
  result.report.input_count = static_cast<int64_t>(records.size());
  absl::flat_hash_set<std::string> seen;
  for (const SentenceRecord& record : records) {
    absl::StatusOr<std::string> cleaned = CleanText(record.text);
    if (!cleaned.ok()) {
      ++result.report.removed_empty;
      continue;
    }
    if (!seen.insert(*cleaned).second) {
      ++result.report.removed_duplicates;
      continue;
    }
    if (!IsStandardEnglish(*cleaned, dictionary)) {
      ++result.report.removed_non_english;
      continue;
    }
    SentenceRecord out = record;
    out.text = *std::move(cleaned);
    result.records.push_back(std::move(out));
  }
  result.report.output_count = static_cast<int64_t>(result.records.size());
  return result;
}

absl::StatusOr<std::vector<SentenceRecord>> LoadDataset(
    const std::string& path) {
  std::vector<SentenceRecord> records;
  absl::flat_hash_set<std::string> ids;
  absl::Status status =
      internal::ForEachJsonLine(path, [&](const Json& j, int line) {
        if (!j.is_object()) return internal::MalformedAt(line, "not an object");
        auto id = j.find("id");
        auto text = j.find("text");
        auto toxicity = j.find("toxicity");
        if (id == j.end() || !id->is_string()) {
          return internal::MalformedAt(line, "id must be a string");
        }
        if (text == j.end() || !text->is_string() ||
            text->get_ref<const std::string&>().empty()) {
          return internal::MalformedAt(line, "text must be a non-empty string");
        }
        SentenceRecord record;
        record.id = id->get<std::string>();
        record.text = text->get<std::string>();
        if (toxicity != j.end()) {
          if (!toxicity->is_number()) {
            return internal::MalformedAt(line, "toxicity must be a number");
          }
          record.toxicity = toxicity->get<double>();
          if (!(record.toxicity >= 0.0 && record.toxicity <= 1.0)) {
            return internal::MalformedAt(line, "toxicity outside [0,1]");
          }
        }
        if (auto tags = j.find("identity_tags"); tags != j.end()) {
          if (!tags->is_array()) {
            return internal::MalformedAt(line, "identity_tags must be a list");
          }
          for (const Json& tag : *tags) {
            if (!tag.is_string()) {
              return internal::MalformedAt(line, "identity tag not a string");
            }
            record.identity_tags.insert(tag.get<std::string>());
          }
        }
        if (!ids.insert(record.id).second) {
          return internal::MalformedAt(line, "duplicate id " + record.id);
        }
        records.push_back(std::move(record));
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  return records;
}

absl::Status WriteDataset(const std::string& path,
                          const std::vector<SentenceRecord>& records) {
  std::string out;
  for (const SentenceRecord& r : records) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["text"] = r.text;
    j["toxicity"] = r.toxicity;
    j["identity_tags"] = nlohmann::ordered_json::array();
    for (const std::string& tag : r.identity_tags) {
      j["identity_tags"].push_back(tag);
    }
    out += j.dump(-1, ' ', false, Json::error_handler_t::replace);
    out.push_back('\n');
  }
  return internal::WriteFile(path, out);
}

absl::StatusOr<std::vector<SentenceRecord>> LoadPlainText(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) return MakeError(absl::StatusCode::kNotFound, "io", path);
  std::vector<SentenceRecord> records;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    SentenceRecord record;
    record.id = std::to_string(line_number);
    record.text = line;
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace perturbkit
