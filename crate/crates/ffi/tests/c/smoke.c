#include <stdio.h>
#include <string.h>
#include "sos_cone.h"

#define CHECK(expr)                                                       \
    do {                                                                  \
        SosStatus s_ = (expr);                                            \
        if (s_ != SOS_STATUS_OK) {                                        \
            const char *m_ = sos_last_error_message();                    \
            fprintf(stderr, "%s -> %d: %s\n", #expr, s_, m_ ? m_ : "");   \
            return 1;                                                     \
        }                                                                 \
    } while (0)

int main(void) {
    SosPolynomial *p = NULL;
    CHECK(sos_polynomial_parse("1 + x1^4 + x2^4 - x1^2*x2", 2, 0, &p));

    SosReport *r = NULL;
    CHECK(sos_check_theorem1(p, &r));
    bool accepted = false;
    CHECK(sos_report_accepted(r, &accepted));
    char *json = NULL;
    CHECK(sos_report_to_json(r, &json));
    printf("%s\n", json);
    sos_string_free(json);
    sos_report_free(r);

    SosVerdict *v = NULL;
    CHECK(sos_certify(p, 0.0, 0, &v));
    SosOracleStatus st;
    CHECK(sos_verdict_status(v, &st));
    sos_verdict_free(v);
    sos_polynomial_free(p);

    SosPolynomial *bad = NULL;
    SosStatus s = sos_polynomial_parse("1 +", 1, 0, &bad);
    if (s != SOS_STATUS_PARSE || bad != NULL || sos_last_error_message() == NULL) {
        return 2;
    }
    return accepted && st == SOS_ORACLE_STATUS_CERTIFIED_SOS ? 0 : 3;
}
