#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>

namespace toepqr {

// Multiplication-equivalent counter.  Divisions and squarings bill as
// multiplications; square roots (one per rotation generation, O(n) of them
// per factorization) are not billed.  Every operation bills its nominal
// cost even when a short-circuit (identity rotation, zero operand) skips
// the arithmetic, so counts are input-independent for a given shape.
// Callers own the accumulator; the library never keeps a global one.
struct Tally {
    std::uint64_t mults = 0;
};

inline void bill(Tally* tally, std::uint64_t cost) {
    if (tally != nullptr) tally->mults += cost;
}

// Tracks peak auxiliary storage in units of doubles ("words").  Used by the
// low-storage paths to demonstrate their footprint; scopes register the
// arrays they hold via alloc/release.
struct StorageAudit {
    std::size_t current_words = 0;
    std::size_t peak_words = 0;

    void alloc(std::size_t words) {
        current_words += words;
        peak_words = std::max(peak_words, current_words);
    }
    void release(std::size_t words) {
        current_words -= std::min(words, current_words);
    }
};

// RAII registration of a block of auxiliary storage with an (optional) audit.
class AuditScope {
  public:
    AuditScope(StorageAudit* audit, std::size_t words) : audit_(audit), words_(words) {
        if (audit_ != nullptr) audit_->alloc(words_);
    }
    ~AuditScope() {
        if (audit_ != nullptr) audit_->release(words_);
    }
    AuditScope(const AuditScope&) = delete;
    AuditScope& operator=(const AuditScope&) = delete;

  private:
    StorageAudit* audit_;
    std::size_t words_;
};

}  // namespace toepqr
