#ifndef ONTOCRAWL_ERROR_HPP
#define ONTOCRAWL_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ontocrawl {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (store files, manifests, annotation lines...).
// Carries the 1-based line number when one is known.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line = 0)
        : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Transport-level fetch failure (unreachable host, bad scheme, timeout).
// HTTP-level errors are not failures; they come back as documents.
class FetchError : public Error {
public:
    FetchError(const std::string& msg, std::string url)
        : Error(msg + ": " + url), url_(std::move(url)) {}
    const std::string& url() const { return url_; }

private:
    std::string url_;
};

// Store rejected an operation (malformed triple, domain mismatch, bad file).
class StoreError : public Error {
public:
    using Error::Error;
};

// A documented precondition was violated by the caller.
class ContractError : public Error {
public:
    using Error::Error;
};

// Every seed failed; carries one message per seed.
class BuilderError : public Error {
public:
    BuilderError(const std::string& msg, std::vector<std::string> failures)
        : Error(msg), failures_(std::move(failures)) {}
    const std::vector<std::string>& failures() const { return failures_; }

private:
    std::vector<std::string> failures_;
};

// A form submission could not be delivered.
class SubmitError : public Error {
public:
    SubmitError(const std::string& msg, std::string form_id, std::string assignments)
        : Error(msg), form_id_(std::move(form_id)), assignments_(std::move(assignments)) {}
    const std::string& form_id() const { return form_id_; }
    const std::string& assignments() const { return assignments_; }

private:
    std::string form_id_;
    std::string assignments_;
};

} // namespace ontocrawl

#endif // ONTOCRAWL_ERROR_HPP
