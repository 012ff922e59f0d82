#include <stdio.h>

int main() {
    int x;
    scanf("%d", &x);
    int prime = 1;
    if (x < 2) {
        prime = 0;
    }
    for (int d = 2; d * d <= x; d++) {
        if (x % d == 0) {
            prime = 0;
        }
    }
    printf("%d\n", prime);
    return 0;
}
