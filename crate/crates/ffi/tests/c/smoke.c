#include <stdio.h>
#include <string.h>

#include "supergeom.h"

#define CHECK(call)                                                   \
    do {                                                              \
        sg_status st_ = (call);                                       \
        if (st_ != SG_STATUS_OK) {                                    \
            fprintf(stderr, "%s: %d %s\n", #call, st_, sg_last_error()); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    sg_setting *s = NULL;
    CHECK(sg_setting_new("gl(2|2)", "additive", &s));

    size_t atyp = 0;
    CHECK(sg_atyp(s, "[1, 0, -1, 0]", &atyp));
    if (atyp != 2) return 2;

    bool eq = false;
    CHECK(sg_equivalent(s, "[1, 0, -1, 0]", "[0, 5, 0, -5]", &eq));
    if (!eq) return 3;

    sg_poly *t = NULL;
    CHECK(sg_t_element(s, &t));
    bool member = false;
    CHECK(sg_is_supersymmetric(s, t, true, &member));
    if (!member) return 4;

    char *text = NULL;
    CHECK(sg_poly_to_string(t, &text));
    printf("T = %s\n", text);
    sg_string_free(text);

    if (sg_atyp(s, "[1]", &atyp) != SG_STATUS_DOMAIN_ERROR) return 5;
    if (strlen(sg_last_error()) == 0) return 6;

    sg_poly_free(t);
    sg_setting_free(s);
    return 0;
}
