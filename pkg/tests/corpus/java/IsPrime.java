import java.util.Scanner;

public class IsPrime {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int x = sc.nextInt();
        int prime = 1;
        if (x < 2) {
            prime = 0;
        }
        for (int d = 2; d * d <= x; d++) {
            if (x % d == 0) {
                prime = 0;
            }
        }
        System.out.println(prime);
    }
}
