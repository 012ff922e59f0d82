import java.util.Scanner;

public class CountEvens {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        int evens = 0;
        int odds = 0;
        for (int i = 0; i < n; i++) {
            int v = sc.nextInt();
            if (v % 2 == 0) {
                evens++;
            } else {
                odds++;
            }
        }
        System.out.println(evens);
        System.out.println(odds);
    }
}
