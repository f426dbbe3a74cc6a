#pragma once

#include <cstdio>
#include <cstdlib>

static int checks_run = 0;
static int checks_failed = 0;

#define CHECK(cond)                                                     \
    do {                                                                \
        ++checks_run;                                                   \
        if (!(cond)) {                                                  \
            ++checks_failed;                                            \
            std::fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, \
                         #cond);                                        \
        }                                                               \
    } while (0)

#define CHECK_THROWS(expr, want_code)                                   \
    do {                                                                \
        ++checks_run;                                                   \
        bool caught = false;                                            \
        try {                                                           \
            (void)(expr);                                               \
        } catch (const cm3::Error& e) {                                 \
            caught = (e.code() == (want_code));                         \
            if (!caught)                                                \
                std::fprintf(stderr, "FAIL %s:%d: wrong code: %s\n",    \
                             __FILE__, __LINE__, e.what());             \
        }                                                               \
        if (!caught) {                                                  \
            ++checks_failed;                                            \
            std::fprintf(stderr, "FAIL %s:%d: expected throw: %s\n",    \
                         __FILE__, __LINE__, #expr);                    \
        }                                                               \
    } while (0)

static int check_summary(const char* name) {
    if (checks_failed) {
        std::fprintf(stderr, "%s: %d/%d checks failed\n", name,
                     checks_failed, checks_run);
        return 1;
    }
    std::printf("%s: %d checks passed\n", name, checks_run);
    return 0;
}
