#include <stdio.h>

int main() {
    int n;
    scanf("%d", &n);
    int evens = 0;
    int odds = 0;
    for (int i = 0; i < n; i++) {
        int v;
        scanf("%d", &v);
        if (v % 2 == 0) {
            evens++;
        } else {
            odds++;
        }
    }
    printf("%d\n", evens);
    printf("%d\n", odds);
    return 0;
}
