#include <stdio.h>

int main() {
    int x;
    scanf("%d", &x);
    int total = 0;
    while (x > 0) {
        total += x % 10;
        x = x / 10;
    }
    printf("%d\n", total);
    return 0;
}
