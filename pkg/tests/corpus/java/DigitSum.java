import java.util.Scanner;

public class DigitSum {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int x = sc.nextInt();
        int total = 0;
        while (x > 0) {
            total += x % 10;
            x = x / 10;
        }
        System.out.println(total);
    }
}
