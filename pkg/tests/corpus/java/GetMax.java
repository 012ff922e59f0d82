import java.util.Scanner;

public class GetMax {
    static int getMax(int a, int b) {
        if (a > b) {
            return a;
        } else {
            return b;
        }
    }

    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int a = sc.nextInt();
        int b = sc.nextInt();
        int best = getMax(a, b);
        System.out.println(best);
    }
}
