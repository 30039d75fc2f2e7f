#include <stdio.h>
#include "rdc/rdc.h"

int main(void) {
  rdc_group* g = NULL;
  char* text = NULL;
  if (rdc_point_group(RDC_THEORY_DELIGNE, 1, 8, &g) != RDC_OK) {
    fprintf(stderr, "%s\n", rdc_last_error());
    return 1;
  }
  rdc_group_render(g, RDC_FORMAT_TEXT, &text);
  puts(text);
  rdc_string_free(text);
  rdc_group_free(g);
  return 0;
}
