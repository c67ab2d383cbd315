/**
   A simple Java file.
*/
// Uncomment version:



public class simple {

  public static int main(String[] args) {

    System.out.println("Release version");

    return 0;
  }
}
